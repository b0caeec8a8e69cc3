#include "cofib/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace cofib {

  namespace {

    std::string word_name(GroupWord const& w) {
      return w.empty() ? std::string("1") : to_string(w);
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // FinGroup
  ////////////////////////////////////////////////////////////////////////

  FinGroup::FinGroup() : _names{"1"}, _table{{0}}, _inverse{0}, _identity(0) {}

  FinGroup::FinGroup(std::vector<std::string> names, std::vector<std::vector<Elt>> table)
      : _names(std::move(names)), _table(std::move(table)) {
    auto report = validate_group_table(_table);
    if (!report.ok()) {
      throw InputError("not a group table: " + report.failures.front());
    }
    if (_names.size() != _table.size()) {
      throw InputError("group: " + std::to_string(_names.size()) + " names for "
                       + std::to_string(_table.size()) + " elements");
    }
    std::size_t n = _table.size();
    for (Elt e = 0; e < n; ++e) {
      bool neutral = true;
      for (Elt a = 0; a < n && neutral; ++a) {
        neutral = _table[e][a] == a && _table[a][e] == a;
      }
      if (neutral) {
        _identity = e;
        break;
      }
    }
    _inverse.assign(n, 0);
    for (Elt a = 0; a < n; ++a) {
      for (Elt b = 0; b < n; ++b) {
        if (_table[a][b] == _identity) {
          _inverse[a] = b;
          break;
        }
      }
    }
  }

  Elt FinGroup::pow(Elt a, long long k) const {
    if (k < 0) {
      a = inv(a);
      k = -k;
    }
    Elt r = _identity;
    for (long long i = 0; i < k; ++i) {
      r = mul(r, a);
    }
    return r;
  }

  std::size_t FinGroup::element_order(Elt a) const {
    std::size_t k = 1;
    for (Elt x = a; x != _identity; x = mul(x, a)) {
      ++k;
    }
    return k;
  }

  std::optional<Elt> FinGroup::find(std::string_view name) const {
    for (Elt a = 0; a < _names.size(); ++a) {
      if (_names[a] == name) {
        return a;
      }
    }
    return std::nullopt;
  }

  bool FinGroup::is_abelian() const {
    for (Elt a = 0; a < order(); ++a) {
      for (Elt b = a + 1; b < order(); ++b) {
        if (mul(a, b) != mul(b, a)) {
          return false;
        }
      }
    }
    return true;
  }

  Elt FinGroup::evaluate(GroupWord const& w, std::vector<Elt> const& gens) const {
    Elt r = _identity;
    for (Letter l : w) {
      Elt g = gens.at(generator_of(l));
      r     = mul(r, is_inverse(l) ? inv(g) : g);
    }
    return r;
  }

  ValidationReport validate_group_table(std::vector<std::vector<Elt>> const& table) {
    ValidationReport report;
    std::size_t      n = table.size();
    if (n == 0) {
      report.add("empty table");
      return report;
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n) {
        report.add("row " + std::to_string(a) + " has wrong length");
        return report;
      }
      for (Elt x : table[a]) {
        if (x >= n) {
          report.add("entry out of range in row " + std::to_string(a));
          return report;
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (table[table[a][b]][c] != table[a][table[b][c]]) {
            report.add("associativity fails at (" + std::to_string(a) + ","
                       + std::to_string(b) + "," + std::to_string(c) + ")");
            return report;
          }
        }
      }
    }
    std::optional<Elt> e;
    for (Elt x = 0; x < n && !e; ++x) {
      bool neutral = true;
      for (Elt a = 0; a < n && neutral; ++a) {
        neutral = table[x][a] == a && table[a][x] == a;
      }
      if (neutral) {
        e = x;
      }
    }
    if (!e) {
      report.add("no identity element");
      return report;
    }
    for (Elt a = 0; a < n; ++a) {
      bool found = false;
      for (Elt b = 0; b < n && !found; ++b) {
        found = table[a][b] == *e && table[b][a] == *e;
      }
      if (!found) {
        report.add("inverse axiom fails for element " + std::to_string(a));
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  FinGroup trivial_group() {
    return FinGroup();
  }

  FinGroup cyclic_group(std::size_t n) {
    if (n == 0) {
      throw InputError("cyclic_group: order must be positive");
    }
    std::vector<std::string>      names(n);
    std::vector<std::vector<Elt>> table(n, std::vector<Elt>(n));
    for (std::size_t a = 0; a < n; ++a) {
      names[a] = a == 0 ? "1" : a == 1 ? "a" : "a^" + std::to_string(a);
      for (std::size_t b = 0; b < n; ++b) {
        table[a][b] = (a + b) % n;
      }
    }
    return FinGroup(std::move(names), std::move(table));
  }

  FinGroup direct_product(FinGroup const& a, FinGroup const& b) {
    std::size_t                   na = a.order(), nb = b.order();
    std::vector<std::string>      names(na * nb);
    std::vector<std::vector<Elt>> table(na * nb, std::vector<Elt>(na * nb));
    // index x * nb + y; put the identity first
    auto idx = [&](Elt x, Elt y) {
      Elt ix = (x + na - a.identity()) % na;
      Elt iy = (y + nb - b.identity()) % nb;
      return ix * nb + iy;
    };
    for (Elt x = 0; x < na; ++x) {
      for (Elt y = 0; y < nb; ++y) {
        names[idx(x, y)] = "(" + a.name(x) + "," + b.name(y) + ")";
        for (Elt x2 = 0; x2 < na; ++x2) {
          for (Elt y2 = 0; y2 < nb; ++y2) {
            table[idx(x, y)][idx(x2, y2)] = idx(a.mul(x, x2), b.mul(y, y2));
          }
        }
      }
    }
    return FinGroup(std::move(names), std::move(table));
  }

  FinGroup dihedral_group(std::size_t n) {
    if (n == 0) {
      throw InputError("dihedral_group: n must be positive");
    }
    std::size_t                   m = 2 * n;
    std::vector<std::string>      names(m);
    std::vector<std::vector<Elt>> table(m, std::vector<Elt>(m));
    for (std::size_t x = 0; x < m; ++x) {
      std::size_t a = x % n, e = x / n;
      names[x]      = (a == 0 ? std::string() : "r^" + std::to_string(a)) + (e ? "s" : "");
      if (names[x].empty()) {
        names[x] = "1";
      }
      for (std::size_t y = 0; y < m; ++y) {
        std::size_t b = y % n, f = y / n;
        std::size_t c = e ? (a + n - b) % n : (a + b) % n;
        table[x][y]   = c + n * ((e + f) % 2);
      }
    }
    return FinGroup(std::move(names), std::move(table));
  }

  FinGroup quaternion_group() {
    // units 1, i, j, k; sign bit in the high half
    static int const sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    static int const unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static char const* const base[4] = {"1", "i", "j", "k"};
    std::vector<std::string>      names(8);
    std::vector<std::vector<Elt>> table(8, std::vector<Elt>(8));
    for (std::size_t x = 0; x < 8; ++x) {
      names[x] = (x >= 4 ? "-" : "") + std::string(base[x % 4]);
      for (std::size_t y = 0; y < 8; ++y) {
        std::size_t s = (x / 4 + y / 4 + sign[x % 4][y % 4]) % 2;
        table[x][y]   = s * 4 + unit[x % 4][y % 4];
      }
    }
    return FinGroup(std::move(names), std::move(table));
  }

  FinGroup symmetric_group(std::size_t n) {
    if (n <= 1) {
      return trivial_group();
    }
    std::vector<std::size_t> swap(n), cycle(n);
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    for (std::size_t i = 0; i < n; ++i) {
      cycle[i] = (i + 1) % n;
    }
    return group_from_permutations({swap, cycle});
  }

  FinGroup group_from_permutations(std::vector<std::vector<std::size_t>> const& gens) {
    using Perm = std::vector<std::size_t>;
    if (gens.empty()) {
      return trivial_group();
    }
    std::size_t degree = gens.front().size();
    Perm        id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::map<Perm, Elt>    index{{id, 0}};
    std::vector<Perm>      elts{id};
    std::vector<GroupWord> words{{}};
    for (std::size_t i = 0; i < elts.size(); ++i) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Perm p(degree);
        for (std::size_t k = 0; k < degree; ++k) {
          p[k] = gens[g][elts[i][k]];
        }
        if (index.emplace(p, elts.size()).second) {
          elts.push_back(p);
          auto w = words[i];
          w.push_back(letter(g));
          words.push_back(std::move(w));
        }
      }
    }
    std::size_t                   n = elts.size();
    std::vector<std::vector<Elt>> table(n, std::vector<Elt>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        // apply a then b
        Perm p(degree);
        for (std::size_t k = 0; k < degree; ++k) {
          p[k] = elts[b][elts[a][k]];
        }
        table[a][b] = index.at(p);
      }
    }
    std::vector<std::string> names(n);
    for (std::size_t a = 0; a < n; ++a) {
      names[a] = word_name(words[a]);
    }
    return FinGroup(std::move(names), std::move(table));
  }

  FinGroup with_word_names(FinGroup const& g) {
    auto gens = generating_set(g);
    // BFS over positive letters only; the group is finite.
    std::vector<Elt>       order{g.identity()};
    std::vector<GroupWord> words{{}};
    std::vector<bool>      seen(g.order(), false);
    seen[g.identity()] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t s = 0; s < gens.size(); ++s) {
        Elt x = g.mul(order[i], gens[s]);
        if (!seen[x]) {
          seen[x] = true;
          order.push_back(x);
          auto w = words[i];
          w.push_back(letter(s));
          words.push_back(std::move(w));
        }
      }
    }
    std::vector<Elt> position(g.order());
    for (std::size_t i = 0; i < order.size(); ++i) {
      position[order[i]] = i;
    }
    std::size_t                   n = g.order();
    std::vector<std::vector<Elt>> table(n, std::vector<Elt>(n));
    std::vector<std::string>      names(n);
    for (std::size_t i = 0; i < n; ++i) {
      names[i] = word_name(words[i]);
      for (std::size_t j = 0; j < n; ++j) {
        table[i][j] = position[g.mul(order[i], order[j])];
      }
    }
    return FinGroup(std::move(names), std::move(table));
  }

  std::vector<LibraryGroup> const& small_groups() {
    static std::vector<LibraryGroup> const groups = [] {
      auto c = [](std::size_t n) { return with_word_names(cyclic_group(n)); };
      std::vector<LibraryGroup> out;
      out.push_back({"C1", trivial_group()});
      out.push_back({"C2", c(2)});
      out.push_back({"C3", c(3)});
      out.push_back({"C4", c(4)});
      out.push_back({"C2xC2", with_word_names(direct_product(cyclic_group(2), cyclic_group(2)))});
      out.push_back({"C5", c(5)});
      out.push_back({"C6", c(6)});
      out.push_back({"S3", with_word_names(symmetric_group(3))});
      out.push_back({"C7", c(7)});
      out.push_back({"C8", c(8)});
      out.push_back({"C4xC2", with_word_names(direct_product(cyclic_group(4), cyclic_group(2)))});
      out.push_back({"C2xC2xC2",
                     with_word_names(direct_product(
                         cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2))))});
      out.push_back({"D8", with_word_names(dihedral_group(4))});
      out.push_back({"Q8", with_word_names(quaternion_group())});
      return out;
    }();
    return groups;
  }

  FinGroup const& library_group(std::string_view name) {
    for (auto const& g : small_groups()) {
      if (g.name == name) {
        return g.group;
      }
    }
    throw InputError("unknown library group '" + std::string(name) + "'");
  }

  ////////////////////////////////////////////////////////////////////////
  // Subgroups, generators, words
  ////////////////////////////////////////////////////////////////////////

  std::vector<bool> subgroup_generated(FinGroup const& g, std::vector<Elt> const& gens) {
    std::vector<bool> in(g.order(), false);
    std::vector<Elt>  queue{g.identity()};
    in[g.identity()] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (Elt s : gens) {
        Elt x = g.mul(queue[i], s);
        if (!in[x]) {
          in[x] = true;
          queue.push_back(x);
        }
      }
    }
    return in;
  }

  std::vector<Elt> generating_set(FinGroup const& g) {
    std::vector<Elt>  gens;
    std::vector<bool> in = subgroup_generated(g, gens);
    for (Elt x = 0; x < g.order(); ++x) {
      if (!in[x]) {
        gens.push_back(x);
        in = subgroup_generated(g, gens);
      }
    }
    return gens;
  }

  std::vector<GroupWord> cayley_words(FinGroup const& g, std::vector<Elt> const& gens) {
    std::vector<GroupWord> words(g.order());
    std::vector<bool>      seen(g.order(), false);
    std::vector<Elt>       queue{g.identity()};
    seen[g.identity()] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Elt x = queue[i];
      for (std::size_t s = 0; s < gens.size(); ++s) {
        for (bool inv : {false, true}) {
          Elt y = g.mul(x, inv ? g.inv(gens[s]) : gens[s]);
          if (!seen[y]) {
            seen[y]  = true;
            words[y] = words[x];
            words[y].push_back(letter(s, inv));
            queue.push_back(y);
          }
        }
      }
    }
    if (queue.size() != g.order()) {
      throw InputError("cayley_words: the given elements do not generate the group");
    }
    return words;
  }

  GroupPresentation cayley_presentation(FinGroup const& g, std::vector<Elt> const& gens) {
    auto              words = cayley_words(g, gens);
    GroupPresentation pres;
    pres.generators = gens.size();
    std::vector<GroupWord> seen;
    for (Elt e = 0; e < g.order(); ++e) {
      for (std::size_t s = 0; s < gens.size(); ++s) {
        GroupWord w = words[e];
        w.push_back(letter(s));
        w = free_reduce(concat(w, invert(words[g.mul(e, gens[s])])));
        if (!w.empty() && std::find(seen.begin(), seen.end(), w) == seen.end()) {
          seen.push_back(w);
          pres.relators.push_back(w);
        }
      }
    }
    return pres;
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphisms
  ////////////////////////////////////////////////////////////////////////

  bool is_homomorphism(FinGroup const& g, FinGroup const& h, GroupHom const& f) {
    if (f.size() != g.order()) {
      return false;
    }
    for (Elt x : f) {
      if (x >= h.order()) {
        return false;
      }
    }
    for (Elt a = 0; a < g.order(); ++a) {
      for (Elt b = 0; b < g.order(); ++b) {
        if (f[g.mul(a, b)] != h.mul(f[a], f[b])) {
          return false;
        }
      }
    }
    return true;
  }

  namespace {

    // Backtracking over generator images. After each generator is fixed, the
    // partial map is propagated through the Cayley graph of the subgroup
    // generated so far; a conflict prunes the branch.
    class HomSearch {
     public:
      HomSearch(FinGroup const& g, FinGroup const& h, bool injective)
          : _g(g), _h(h), _gens(generating_set(g)), _injective(injective) {}

      void run(std::function<bool(GroupHom const&)> const& visit) {
        _visit = &visit;
        _images.clear();
        _stop = false;
        recurse();
      }

     private:
      bool propagate(GroupHom& map) const {
        map.assign(_g.order(), kNone);
        map[_g.identity()] = _h.identity();
        std::vector<Elt> queue{_g.identity()};
        for (std::size_t i = 0; i < queue.size(); ++i) {
          Elt x = queue[i];
          for (std::size_t s = 0; s < _images.size(); ++s) {
            Elt y   = _g.mul(x, _gens[s]);
            Elt img = _h.mul(map[x], _images[s]);
            if (map[y] == kNone) {
              map[y] = img;
              queue.push_back(y);
            } else if (map[y] != img) {
              return false;
            }
          }
        }
        if (_injective) {
          std::vector<bool> hit(_h.order(), false);
          for (Elt x : queue) {
            if (hit[map[x]]) {
              return false;
            }
            hit[map[x]] = true;
          }
        }
        return true;
      }

      void recurse() {
        if (_stop) {
          return;
        }
        GroupHom map;
        if (!propagate(map)) {
          return;
        }
        if (_images.size() == _gens.size()) {
          if (!(*_visit)(map)) {
            _stop = true;
          }
          return;
        }
        std::size_t ord = _g.element_order(_gens[_images.size()]);
        for (Elt y = 0; y < _h.order() && !_stop; ++y) {
          if (ord % _h.element_order(y) != 0) {
            continue;
          }
          if (_injective && _h.element_order(y) != ord) {
            continue;
          }
          _images.push_back(y);
          recurse();
          _images.pop_back();
        }
      }

      FinGroup const&                             _g;
      FinGroup const&                             _h;
      std::vector<Elt>                            _gens;
      bool                                        _injective;
      std::vector<Elt>                            _images;
      std::function<bool(GroupHom const&)> const* _visit = nullptr;
      bool                                        _stop  = false;
    };

  }  // namespace

  void for_each_homomorphism(FinGroup const&                             g,
                             FinGroup const&                             h,
                             std::function<bool(GroupHom const&)> const& visit) {
    HomSearch(g, h, false).run(visit);
  }

  std::vector<GroupHom> homomorphisms(FinGroup const& g, FinGroup const& h) {
    std::vector<GroupHom> out;
    for_each_homomorphism(g, h, [&](GroupHom const& f) {
      out.push_back(f);
      return true;
    });
    return out;
  }

  std::vector<GroupHom> automorphisms(FinGroup const& g) {
    std::vector<GroupHom> out;
    HomSearch(g, g, true).run([&](GroupHom const& f) {
      out.push_back(f);
      return true;
    });
    return out;
  }

  std::optional<GroupHom> find_group_isomorphism(FinGroup const& g, FinGroup const& h) {
    if (g.order() != h.order()) {
      return std::nullopt;
    }
    auto profile = [](FinGroup const& x) {
      std::vector<std::size_t> p;
      for (Elt a = 0; a < x.order(); ++a) {
        p.push_back(x.element_order(a));
      }
      std::sort(p.begin(), p.end());
      return p;
    };
    if (profile(g) != profile(h) || g.is_abelian() != h.is_abelian()) {
      return std::nullopt;
    }
    std::optional<GroupHom> found;
    HomSearch(g, h, true).run([&](GroupHom const& f) {
      found = f;
      return false;
    });
    return found;
  }

  std::vector<bool> kernel(FinGroup const& g, FinGroup const& h, GroupHom const& f) {
    std::vector<bool> k(g.order());
    for (Elt a = 0; a < g.order(); ++a) {
      k[a] = f[a] == h.identity();
    }
    return k;
  }

}  // namespace cofib
