#include "cofib/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace cofib {

  ////////////////////////////////////////////////////////////////////////
  // FinGroupoid
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::size_t> FinGroupoid::hom(std::size_t x, std::size_t y) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      if (arrows[a].src == x && arrows[a].tgt == y) {
        out.push_back(a);
      }
    }
    return out;
  }

  std::optional<std::size_t> FinGroupoid::find_object(std::string_view name) const {
    for (std::size_t i = 0; i < objects.size(); ++i) {
      if (objects[i] == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::optional<std::size_t> FinGroupoid::find_arrow(std::string_view id) const {
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      if (arrows[i].id == id) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t FinGroupoid::object_index(std::string_view name) const {
    auto i = find_object(name);
    if (!i) {
      throw InputError("unknown object '" + std::string(name) + "'");
    }
    return *i;
  }

  std::size_t FinGroupoid::arrow_index(std::string_view id) const {
    auto i = find_arrow(id);
    if (!i) {
      throw InputError("unknown arrow '" + std::string(id) + "'");
    }
    return *i;
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  ValidationReport validate_groupoid(FinGroupoid const& g) {
    ValidationReport report;
    std::size_t      n = g.objects.size(), m = g.arrows.size();
    {
      std::set<std::string> names(g.objects.begin(), g.objects.end());
      if (names.size() != n) {
        report.add("duplicate object names");
      }
      std::set<std::string> ids;
      for (auto const& a : g.arrows) {
        ids.insert(a.id);
      }
      if (ids.size() != m) {
        report.add("duplicate arrow ids");
      }
    }
    for (auto const& a : g.arrows) {
      if (a.src >= n || a.tgt >= n) {
        report.add("arrow " + a.id + " has an endpoint outside the object set");
      }
    }
    if (g.identity.size() != n || g.inverse.size() != m || g.compose.size() != m) {
      report.add("table sizes do not match the object and arrow counts");
    }
    for (auto const& row : g.compose) {
      if (row.size() != m) {
        report.add("compose table is not square");
        break;
      }
    }
    if (!report.ok()) {
      return report;
    }
    auto const& A = g.arrows;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        std::size_t c = g.compose[a][b];
        if (A[a].tgt != A[b].src) {
          if (c != kNone) {
            report.add("compose defined on non-composable pair (" + A[a].id + "," + A[b].id + ")");
          }
        } else if (c == kNone || c >= m) {
          report.add("compose undefined on composable pair (" + A[a].id + "," + A[b].id + ")");
        } else if (A[c].src != A[a].src || A[c].tgt != A[b].tgt) {
          report.add("compose of (" + A[a].id + "," + A[b].id + ") has wrong endpoints");
        }
      }
    }
    if (!report.ok()) {
      return report;
    }
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (A[a].tgt != A[b].src) {
          continue;
        }
        std::size_t ab = g.compose[a][b];
        for (std::size_t c = 0; c < m; ++c) {
          if (A[b].tgt == A[c].src && g.compose[ab][c] != g.compose[a][g.compose[b][c]]) {
            report.add("associativity fails at (" + A[a].id + "," + A[b].id + "," + A[c].id + ")");
          }
        }
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t e = g.identity[x];
      if (e >= m || A[e].src != x || A[e].tgt != x) {
        report.add("identity of " + g.objects[x] + " is not a loop at it");
        continue;
      }
      for (std::size_t a = 0; a < m; ++a) {
        if ((A[a].src == x && g.compose[e][a] != a) || (A[a].tgt == x && g.compose[a][e] != a)) {
          report.add("identity axiom fails for " + g.objects[x] + " and " + A[a].id);
        }
      }
    }
    if (!report.ok()) {
      return report;
    }
    for (std::size_t a = 0; a < m; ++a) {
      std::size_t b = g.inverse[a];
      if (b >= m || A[b].src != A[a].tgt || A[b].tgt != A[a].src
          || g.compose[a][b] != g.identity[A[a].src] || g.compose[b][a] != g.identity[A[a].tgt]) {
        report.add("inverse axiom fails for arrow " + A[a].id);
      }
    }
    return report;
  }

  ValidationReport validate_morphism(FinGroupoid const& g,
                                     FinGroupoid const& h,
                                     GpdMorphism const& f) {
    ValidationReport report;
    if (f.on_objects.size() != g.objects.size() || f.on_arrows.size() != g.arrows.size()) {
      report.add("morphism maps have the wrong size");
      return report;
    }
    for (std::size_t x : f.on_objects) {
      if (x >= h.objects.size()) {
        report.add("object image out of range");
        return report;
      }
    }
    for (std::size_t a : f.on_arrows) {
      if (a >= h.arrows.size()) {
        report.add("arrow image out of range");
        return report;
      }
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      std::size_t fa = f.on_arrows[a];
      if (h.src(fa) != f.on_objects[g.src(a)] || h.tgt(fa) != f.on_objects[g.tgt(a)]) {
        report.add("arrow " + g.arrows[a].id + " is sent to an arrow with the wrong endpoints");
      }
    }
    if (!report.ok()) {
      return report;
    }
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      if (f.on_arrows[g.identity[x]] != h.identity[f.on_objects[x]]) {
        report.add("identity of " + g.objects[x] + " is not preserved");
      }
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      for (std::size_t b = 0; b < g.arrows.size(); ++b) {
        std::size_t ab = g.compose[a][b];
        if (ab != kNone && f.on_arrows[ab] != h.mul(f.on_arrows[a], f.on_arrows[b])) {
          report.add("composition not preserved at (" + g.arrows[a].id + "," + g.arrows[b].id
                     + ")");
        }
      }
    }
    return report;
  }

  FinGroupoid make_groupoid(std::vector<std::string>                                    objects,
                            std::vector<Arrow>                                          arrows,
                            std::function<std::size_t(std::size_t, std::size_t)> const& mul) {
    FinGroupoid g;
    g.objects      = std::move(objects);
    g.arrows       = std::move(arrows);
    std::size_t n  = g.objects.size();
    std::size_t m  = g.arrows.size();
    for (auto const& a : g.arrows) {
      if (a.src >= n || a.tgt >= n) {
        throw InputError("arrow " + a.id + " has an endpoint outside the object set");
      }
    }
    g.compose.assign(m, std::vector<std::size_t>(m, kNone));
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (g.arrows[a].tgt == g.arrows[b].src) {
          g.compose[a][b] = mul(a, b);
        }
      }
    }
    g.identity.assign(n, kNone);
    for (std::size_t e = 0; e < m; ++e) {
      std::size_t x = g.arrows[e].src;
      if (g.arrows[e].tgt != x || g.identity[x] != kNone) {
        continue;
      }
      bool neutral = true;
      for (std::size_t a = 0; a < m && neutral; ++a) {
        if (g.arrows[a].src == x && g.compose[e][a] != a) {
          neutral = false;
        }
        if (g.arrows[a].tgt == x && g.compose[a][e] != a) {
          neutral = false;
        }
      }
      if (neutral) {
        g.identity[x] = e;
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (g.identity[x] == kNone) {
        throw InputError("no identity arrow at object " + g.objects[x]);
      }
    }
    g.inverse.assign(m, kNone);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (g.arrows[b].src == g.arrows[a].tgt && g.arrows[b].tgt == g.arrows[a].src
            && g.compose[a][b] == g.identity[g.arrows[a].src]) {
          g.inverse[a] = b;
          break;
        }
      }
      if (g.inverse[a] == kNone) {
        g.inverse[a] = a;  // reported below
      }
    }
    auto report = validate_groupoid(g);
    if (!report.ok()) {
      throw InputError("not a groupoid: " + report.failures.front());
    }
    return g;
  }

  Relabeling canonicalize(FinGroupoid& g) {
    std::size_t              n = g.objects.size(), m = g.arrows.size();
    std::vector<std::size_t> obj(n), arr(m);
    std::iota(obj.begin(), obj.end(), 0);
    std::iota(arr.begin(), arr.end(), 0);
    std::stable_sort(obj.begin(), obj.end(),
                     [&](auto a, auto b) { return g.objects[a] < g.objects[b]; });
    std::stable_sort(arr.begin(), arr.end(),
                     [&](auto a, auto b) { return g.arrows[a].id < g.arrows[b].id; });
    Relabeling rel{std::vector<std::size_t>(n), std::vector<std::size_t>(m)};
    for (std::size_t i = 0; i < n; ++i) {
      rel.objects[obj[i]] = i;
    }
    for (std::size_t i = 0; i < m; ++i) {
      rel.arrows[arr[i]] = i;
    }
    FinGroupoid out;
    out.objects.resize(n);
    out.identity.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      out.objects[rel.objects[x]]  = g.objects[x];
      out.identity[rel.objects[x]] = rel.arrows[g.identity[x]];
    }
    out.arrows.resize(m);
    out.inverse.resize(m);
    out.compose.assign(m, std::vector<std::size_t>(m, kNone));
    for (std::size_t a = 0; a < m; ++a) {
      out.arrows[rel.arrows[a]]  = {g.arrows[a].id, rel.objects[g.arrows[a].src],
                                    rel.objects[g.arrows[a].tgt]};
      out.inverse[rel.arrows[a]] = rel.arrows[g.inverse[a]];
      for (std::size_t b = 0; b < m; ++b) {
        if (g.compose[a][b] != kNone) {
          out.compose[rel.arrows[a]][rel.arrows[b]] = rel.arrows[g.compose[a][b]];
        }
      }
    }
    g = std::move(out);
    return rel;
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  FinGroupoid discrete_groupoid(std::vector<std::string> const& objects) {
    std::vector<Arrow> arrows;
    for (std::size_t x = 0; x < objects.size(); ++x) {
      arrows.push_back({"1_" + objects[x], x, x});
    }
    return make_groupoid(objects, std::move(arrows), [](std::size_t a, std::size_t) { return a; });
  }

  FinGroupoid codiscrete_groupoid(std::vector<std::string> const& objects) {
    std::size_t        n = objects.size();
    std::vector<Arrow> arrows;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        arrows.push_back({objects[x] + ">" + objects[y], x, y});
      }
    }
    return make_groupoid(objects, std::move(arrows), [n](std::size_t a, std::size_t b) {
      return (a / n) * n + b % n;
    });
  }

  FinGroupoid group_groupoid(FinGroup const& g, std::string const& object) {
    std::vector<Arrow> arrows;
    for (Elt a = 0; a < g.order(); ++a) {
      arrows.push_back({g.name(a), 0, 0});
    }
    return make_groupoid({object}, std::move(arrows),
                         [&g](std::size_t a, std::size_t b) { return g.mul(a, b); });
  }

  FinGroupoid connected_groupoid(std::vector<std::string> const& objects, FinGroup const& g) {
    std::size_t        n = objects.size(), k = g.order();
    std::vector<Arrow> arrows;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (Elt e = 0; e < k; ++e) {
          arrows.push_back({"(" + objects[x] + "," + g.name(e) + "," + objects[y] + ")", x, y});
        }
      }
    }
    return make_groupoid(objects, std::move(arrows), [&](std::size_t a, std::size_t b) {
      std::size_t x = a / (n * k), ga = a % k;
      std::size_t z = (b / k) % n, gb = b % k;
      return (x * n + z) * k + g.mul(ga, gb);
    });
  }

  FinGroupoid coproduct_gpd(std::vector<FinGroupoid> const& parts) {
    std::set<std::string> obj_names, arrow_ids;
    bool                  clash = false;
    for (auto const& p : parts) {
      for (auto const& o : p.objects) {
        clash = !obj_names.insert(o).second || clash;
      }
      for (auto const& a : p.arrows) {
        clash = !arrow_ids.insert(a.id).second || clash;
      }
    }
    FinGroupoid              out;
    std::vector<std::size_t> arrow_offset, object_offset;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      auto const& p      = parts[i];
      std::string prefix = clash ? std::to_string(i) + ":" : "";
      object_offset.push_back(out.objects.size());
      arrow_offset.push_back(out.arrows.size());
      for (auto const& o : p.objects) {
        out.objects.push_back(prefix + o);
      }
      for (auto const& a : p.arrows) {
        out.arrows.push_back({prefix + a.id, a.src + object_offset[i], a.tgt + object_offset[i]});
      }
    }
    std::size_t m = out.arrows.size();
    out.compose.assign(m, std::vector<std::size_t>(m, kNone));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      auto const& p  = parts[i];
      std::size_t ao = arrow_offset[i];
      for (std::size_t x = 0; x < p.objects.size(); ++x) {
        out.identity.push_back(p.identity[x] + ao);
      }
      for (std::size_t a = 0; a < p.arrows.size(); ++a) {
        out.inverse.push_back(p.inverse[a] + ao);
        for (std::size_t b = 0; b < p.arrows.size(); ++b) {
          if (p.compose[a][b] != kNone) {
            out.compose[a + ao][b + ao] = p.compose[a][b] + ao;
          }
        }
      }
    }
    return out;
  }

  Pullback pullback_groupoid(std::vector<std::string> const& j_objects,
                             ObjMap const&                   u,
                             FinGroupoid const&              g) {
    std::size_t nj = j_objects.size(), ma = g.arrows.size();
    if (u.size() != nj) {
      throw InputError("pullback: object map has the wrong size");
    }
    for (std::size_t x : u) {
      if (x >= g.objects.size()) {
        throw InputError("pullback: object map leaves the object set");
      }
    }
    std::vector<Arrow>       arrows;
    std::vector<std::size_t> key(nj * nj * ma, kNone);
    std::vector<std::size_t> base;
    for (std::size_t j = 0; j < nj; ++j) {
      for (std::size_t k = 0; k < nj; ++k) {
        for (std::size_t a : g.hom(u[j], u[k])) {
          key[(j * nj + k) * ma + a] = arrows.size();
          arrows.push_back({"(" + j_objects[j] + "," + g.arrows[a].id + "," + j_objects[k] + ")",
                            j, k});
          base.push_back(a);
        }
      }
    }
    Pullback out;
    out.groupoid = make_groupoid(j_objects, arrows, [&](std::size_t a, std::size_t b) {
      return key[(arrows[a].src * nj + arrows[b].tgt) * ma + g.mul(base[a], base[b])];
    });
    out.projection.on_objects = u;
    out.projection.on_arrows  = base;
    return out;
  }

  GpdMorphism identity_morphism(FinGroupoid const& g) {
    GpdMorphism f;
    f.on_objects.resize(g.objects.size());
    f.on_arrows.resize(g.arrows.size());
    std::iota(f.on_objects.begin(), f.on_objects.end(), 0);
    std::iota(f.on_arrows.begin(), f.on_arrows.end(), 0);
    return f;
  }

  GpdMorphism compose_morphisms(GpdMorphism const& f, GpdMorphism const& g) {
    GpdMorphism out;
    for (std::size_t x : f.on_objects) {
      out.on_objects.push_back(g.on_objects.at(x));
    }
    for (std::size_t a : f.on_arrows) {
      out.on_arrows.push_back(g.on_arrows.at(a));
    }
    return out;
  }

  GpdMorphism initiality_check(std::vector<std::string> const& k,
                               FinGroupoid const&              x,
                               ObjMap const&                   u) {
    if (u.size() != k.size()) {
      throw InputError("initiality_check: object map has the wrong size");
    }
    FinGroupoid                           dk = discrete_groupoid(k);
    std::vector<std::vector<std::size_t>> choices;
    std::size_t                           total = 1;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (u[i] >= x.objects.size()) {
        throw InputError("initiality_check: object map leaves the object set");
      }
      choices.push_back(x.hom(u[i], u[i]));
      total *= choices.back().size();
      if (total > (1u << 20)) {
        throw TooLarge("initiality_check: too many candidate arrow maps");
      }
    }
    std::vector<GpdMorphism> found;
    std::vector<std::size_t> pick(k.size(), 0);
    for (std::size_t c = 0; c < total; ++c) {
      GpdMorphism f{u, {}};
      std::size_t rest = c;
      for (std::size_t i = 0; i < k.size(); ++i) {
        f.on_arrows.push_back(choices[i][rest % choices[i].size()]);
        rest /= choices[i].size();
      }
      if (validate_morphism(dk, x, f).ok()) {
        found.push_back(std::move(f));
      }
    }
    if (found.size() != 1) {
      throw Error("initiality_check: found " + std::to_string(found.size())
                  + " morphisms over the object map");
    }
    return found.front();
  }

  ////////////////////////////////////////////////////////////////////////
  // Structure
  ////////////////////////////////////////////////////////////////////////

  Components connected_components(FinGroupoid const& g) {
    std::size_t              n = g.objects.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (auto const& a : g.arrows) {
      std::size_t x = find(a.src), y = find(a.tgt);
      if (x != y) {
        parent[std::max(x, y)] = std::min(x, y);
      }
    }
    Components out;
    out.of.assign(n, kNone);
    std::vector<std::size_t> block_of_root(n, kNone);
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t r = find(x);
      if (block_of_root[r] == kNone) {
        block_of_root[r] = out.blocks.size();
        out.blocks.emplace_back();
      }
      out.of[x] = block_of_root[r];
      out.blocks[out.of[x]].push_back(x);
    }
    return out;
  }

  VertexGroup vertex_group(FinGroupoid const& g, std::size_t x) {
    if (x >= g.objects.size()) {
      throw InputError("vertex_group: unknown object");
    }
    VertexGroup vg;
    vg.arrow_of = g.hom(x, x);
    vg.element_of.assign(g.arrows.size(), kNone);
    for (std::size_t i = 0; i < vg.arrow_of.size(); ++i) {
      vg.element_of[vg.arrow_of[i]] = i;
    }
    std::size_t                   k = vg.arrow_of.size();
    std::vector<std::string>      names(k);
    std::vector<std::vector<Elt>> table(k, std::vector<Elt>(k));
    for (std::size_t i = 0; i < k; ++i) {
      names[i] = g.arrows[vg.arrow_of[i]].id;
      for (std::size_t j = 0; j < k; ++j) {
        table[i][j] = vg.element_of[g.mul(vg.arrow_of[i], vg.arrow_of[j])];
      }
    }
    vg.group = FinGroup(std::move(names), std::move(table));
    return vg;
  }

  GroupoidGenerators groupoid_generators(FinGroupoid const& g) {
    std::size_t        n = g.objects.size();
    GroupoidGenerators out;
    out.root_of.assign(n, kNone);
    out.tree.assign(n, kNone);
    out.vertex.resize(n);
    out.vertex_gens.resize(n);
    out.vertex_words.resize(n);
    out.gen_of_tree.assign(n, kNone);
    out.gen_of_vertex.resize(n);
    auto comps = connected_components(g);
    for (auto const& block : comps.blocks) {
      std::size_t r = block.front();
      for (std::size_t x : block) {
        out.root_of[x] = r;
        out.tree[x]    = x == r ? g.identity[r] : g.hom(r, x).front();
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (out.root_of[x] != x) {
        out.gen_of_tree[x] = out.gens.size();
        out.gens.push_back(out.tree[x]);
      }
    }
    for (auto const& block : comps.blocks) {
      std::size_t r      = block.front();
      out.vertex[r]      = vertex_group(g, r);
      out.vertex_gens[r] = generating_set(out.vertex[r].group);
      out.vertex_words[r] = cayley_words(out.vertex[r].group, out.vertex_gens[r]);
      for (Elt s : out.vertex_gens[r]) {
        out.gen_of_vertex[r].push_back(out.gens.size());
        out.gens.push_back(out.vertex[r].arrow_of[s]);
      }
    }
    return out;
  }

  GroupWord arrow_word(FinGroupoid const& g, GroupoidGenerators const& gens, std::size_t a) {
    std::size_t x = g.src(a), y = g.tgt(a), r = gens.root_of[x];
    std::size_t v = g.mul(g.mul(gens.tree[x], a), g.inverse[gens.tree[y]]);
    GroupWord   w;
    if (gens.gen_of_tree[x] != kNone) {
      w.push_back(letter(gens.gen_of_tree[x], true));
    }
    for (Letter l : gens.vertex_words[r][gens.vertex[r].element_of[v]]) {
      w.push_back(letter(gens.gen_of_vertex[r][generator_of(l)], is_inverse(l)));
    }
    if (gens.gen_of_tree[y] != kNone) {
      w.push_back(letter(gens.gen_of_tree[y]));
    }
    return w;
  }

  Retraction spanning_tree_retraction(FinGroupoid const& g, std::size_t x0) {
    if (x0 >= g.objects.size()) {
      throw InputError("spanning_tree_retraction: unknown base object");
    }
    if (connected_components(g).blocks.size() != 1) {
      throw InputError("spanning_tree_retraction: groupoid is not connected");
    }
    Retraction out;
    out.base = x0;
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      out.tau.push_back(x == x0 ? g.identity[x0] : g.hom(x0, x).front());
    }
    out.vertex = vertex_group(g, x0);
    for (std::size_t c = 0; c < g.arrows.size(); ++c) {
      std::size_t v = g.mul(g.mul(out.tau[g.src(c)], c), g.inverse[out.tau[g.tgt(c)]]);
      out.r.push_back(out.vertex.element_of[v]);
    }
    return out;
  }

  std::size_t reconstruct(FinGroupoid const& g, Retraction const& r, std::size_t c) {
    std::size_t v = r.vertex.arrow_of[r.r[c]];
    return g.mul(g.mul(g.inverse[r.tau[g.src(c)]], v), r.tau[g.tgt(c)]);
  }

  NormalSubgroupoid trivial_subgroupoid(FinGroupoid const& p) {
    NormalSubgroupoid n{std::vector<bool>(p.arrows.size(), false)};
    for (std::size_t e : p.identity) {
      n.member[e] = true;
    }
    return n;
  }

  NormalSubgroupoid normal_closure(FinGroupoid const& p, std::vector<std::size_t> const& r) {
    NormalSubgroupoid        n = trivial_subgroupoid(p);
    std::vector<std::size_t> queue;
    auto                     add = [&](std::size_t a) {
      if (!n.member[a]) {
        n.member[a] = true;
        queue.push_back(a);
      }
    };
    for (std::size_t a : r) {
      if (a >= p.arrows.size() || p.src(a) != p.tgt(a)) {
        throw InputError("normal_closure: relator is not a vertex arrow");
      }
      add(a);
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::size_t a = queue[i], x = p.src(a);
      add(p.inverse[a]);
      for (std::size_t b = 0; b < p.arrows.size(); ++b) {
        if (p.src(b) == x) {
          add(p.mul(p.mul(p.inverse[b], a), b));
        }
        if (n.member[b] && p.src(b) == x && p.tgt(b) == x) {
          add(p.mul(a, b));
          add(p.mul(b, a));
        }
      }
    }
    return n;
  }

  ValidationReport validate_normal(FinGroupoid const& p, NormalSubgroupoid const& n) {
    ValidationReport report;
    if (n.member.size() != p.arrows.size()) {
      report.add("membership vector has the wrong size");
      return report;
    }
    for (std::size_t e : p.identity) {
      if (!n.member[e]) {
        report.add("identity " + p.arrows[e].id + " is missing");
      }
    }
    for (std::size_t a = 0; a < p.arrows.size(); ++a) {
      if (!n.member[a]) {
        continue;
      }
      if (p.src(a) != p.tgt(a)) {
        report.add("member " + p.arrows[a].id + " is not a vertex arrow");
        continue;
      }
      if (!n.member[p.inverse[a]]) {
        report.add("not closed under inverses at " + p.arrows[a].id);
      }
      for (std::size_t b = 0; b < p.arrows.size(); ++b) {
        if (p.src(b) != p.src(a)) {
          continue;
        }
        if (n.member[b] && p.tgt(b) == p.src(a) && !n.member[p.mul(a, b)]) {
          report.add("not closed under products at (" + p.arrows[a].id + "," + p.arrows[b].id
                     + ")");
        }
        if (!n.member[p.mul(p.mul(p.inverse[b], a), b)]) {
          report.add("not closed under conjugation of " + p.arrows[a].id + " by "
                     + p.arrows[b].id);
        }
      }
    }
    return report;
  }

  Quotient quotient_groupoid(FinGroupoid const& p, NormalSubgroupoid const& n) {
    auto report = validate_normal(p, n);
    if (!report.ok()) {
      throw InputError("quotient_groupoid: " + report.failures.front());
    }
    std::size_t              m = p.arrows.size();
    std::vector<std::size_t> rep(m, kNone);
    for (std::size_t a = 0; a < m; ++a) {
      if (rep[a] != kNone) {
        continue;
      }
      for (std::size_t k = 0; k < m; ++k) {
        if (n.member[k] && p.src(k) == p.src(a)) {
          rep[p.mul(k, a)] = a;
        }
      }
    }
    std::vector<std::size_t> class_of(m, kNone), reps;
    std::vector<Arrow>       arrows;
    for (std::size_t a = 0; a < m; ++a) {
      if (rep[a] == a) {
        class_of[a] = reps.size();
        reps.push_back(a);
        arrows.push_back(p.arrows[a]);
      }
    }
    for (std::size_t a = 0; a < m; ++a) {
      class_of[a] = class_of[rep[a]];
    }
    Quotient out;
    out.groupoid = make_groupoid(p.objects, std::move(arrows), [&](std::size_t a, std::size_t b) {
      return class_of[p.mul(reps[a], reps[b])];
    });
    out.projection.on_objects.resize(p.objects.size());
    std::iota(out.projection.on_objects.begin(), out.projection.on_objects.end(), 0);
    out.projection.on_arrows = class_of;
    return out;
  }

  Subgroupoid subgroupoid_generated(FinGroupoid const& g, std::vector<std::size_t> const& arrows) {
    std::size_t              m = g.arrows.size();
    std::vector<bool>        in(m, false);
    std::vector<std::size_t> queue;
    auto                     add = [&](std::size_t a) {
      if (!in[a]) {
        in[a] = true;
        queue.push_back(a);
      }
    };
    for (std::size_t e : g.identity) {
      add(e);
    }
    for (std::size_t a : arrows) {
      if (a >= m) {
        throw InputError("subgroupoid_generated: arrow out of range");
      }
      add(a);
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::size_t a = queue[i];
      add(g.inverse[a]);
      for (std::size_t b = 0; b < m; ++b) {
        if (in[b] && g.tgt(a) == g.src(b)) {
          add(g.mul(a, b));
        }
        if (in[b] && g.tgt(b) == g.src(a)) {
          add(g.mul(b, a));
        }
      }
    }
    Subgroupoid              out;
    std::vector<std::size_t> index(m, kNone);
    std::vector<Arrow>       sub;
    for (std::size_t a = 0; a < m; ++a) {
      if (in[a]) {
        index[a] = sub.size();
        out.inclusion.on_arrows.push_back(a);
        sub.push_back(g.arrows[a]);
      }
    }
    auto const& incl = out.inclusion.on_arrows;
    out.groupoid     = make_groupoid(g.objects, std::move(sub), [&](std::size_t a, std::size_t b) {
      return index[g.mul(incl[a], incl[b])];
    });
    out.inclusion.on_objects.resize(g.objects.size());
    std::iota(out.inclusion.on_objects.begin(), out.inclusion.on_objects.end(), 0);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphism search
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Backtracking over images of a small generating set; after each choice
    // the partial map is propagated along generator edges from the
    // identities and conflicts prune the branch.
    class MorphismSearch {
     public:
      MorphismSearch(FinGroupoid const& g, FinGroupoid const& h, ObjMap const& om)
          : _g(g), _h(h), _om(om), _gens(groupoid_generators(g).gens) {
        if (om.size() != g.objects.size()) {
          throw InputError("morphism search: object map has the wrong size");
        }
        for (std::size_t x : om) {
          if (x >= h.objects.size()) {
            throw InputError("morphism search: object map leaves the object set");
          }
        }
      }

      void run(std::function<bool(GpdMorphism const&)> const& visit) {
        _visit = &visit;
        recurse();
      }

     private:
      bool propagate(std::vector<std::size_t>& map) const {
        map.assign(_g.arrows.size(), kNone);
        std::vector<std::size_t> queue;
        for (std::size_t x = 0; x < _g.objects.size(); ++x) {
          map[_g.identity[x]] = _h.identity[_om[x]];
          queue.push_back(_g.identity[x]);
        }
        for (std::size_t i = 0; i < queue.size(); ++i) {
          std::size_t a = queue[i];
          for (std::size_t k = 0; k < _images.size(); ++k) {
            std::size_t s = _gens[k];
            for (bool inv : {false, true}) {
              std::size_t step = inv ? _g.inverse[s] : s;
              if (_g.tgt(a) != _g.src(step)) {
                continue;
              }
              std::size_t b   = _g.mul(a, step);
              std::size_t img = _h.mul(map[a], inv ? _h.inverse[_images[k]] : _images[k]);
              if (map[b] == kNone) {
                map[b] = img;
                queue.push_back(b);
              } else if (map[b] != img) {
                return false;
              }
            }
          }
        }
        return true;
      }

      void recurse() {
        if (_stop) {
          return;
        }
        std::vector<std::size_t> map;
        if (!propagate(map)) {
          return;
        }
        if (_images.size() == _gens.size()) {
          if (!(*_visit)(GpdMorphism{_om, std::move(map)})) {
            _stop = true;
          }
          return;
        }
        std::size_t s = _gens[_images.size()];
        for (std::size_t c : _h.hom(_om[_g.src(s)], _om[_g.tgt(s)])) {
          if (_stop) {
            return;
          }
          _images.push_back(c);
          recurse();
          _images.pop_back();
        }
      }

      FinGroupoid const&                             _g;
      FinGroupoid const&                             _h;
      ObjMap                                         _om;
      std::vector<std::size_t>                       _gens;
      std::vector<std::size_t>                       _images;
      std::function<bool(GpdMorphism const&)> const* _visit = nullptr;
      bool                                           _stop  = false;
    };

  }  // namespace

  void for_each_morphism(FinGroupoid const&                             g,
                         FinGroupoid const&                             h,
                         ObjMap const&                                  on_objects,
                         std::function<bool(GpdMorphism const&)> const& visit) {
    MorphismSearch(g, h, on_objects).run(visit);
  }

  std::vector<GpdMorphism> morphisms_over(FinGroupoid const& g,
                                          FinGroupoid const& h,
                                          ObjMap const&      on_objects) {
    std::vector<GpdMorphism> out;
    for_each_morphism(g, h, on_objects, [&](GpdMorphism const& f) {
      out.push_back(f);
      return true;
    });
    return out;
  }

  std::optional<GpdMorphism> find_groupoid_isomorphism(FinGroupoid const& g,
                                                       FinGroupoid const& h) {
    for (auto const* x : {&g, &h}) {
      if (x->objects.size() > 16 || x->arrows.size() > 256) {
        throw TooLarge("isomorphism search is limited to 16 objects and 256 arrows");
      }
    }
    if (g.objects.size() != h.objects.size() || g.arrows.size() != h.arrows.size()) {
      return std::nullopt;
    }
    auto cg = connected_components(g), ch = connected_components(h);
    if (cg.blocks.size() != ch.blocks.size()) {
      return std::nullopt;
    }
    std::vector<bool> used(ch.blocks.size(), false);
    GpdMorphism       f{std::vector<std::size_t>(g.objects.size()),
                  std::vector<std::size_t>(g.arrows.size(), kNone)};
    for (auto const& bg : cg.blocks) {
      std::size_t rg_root = bg.front();
      VertexGroup vg      = vertex_group(g, rg_root);
      bool        matched = false;
      for (std::size_t j = 0; j < ch.blocks.size() && !matched; ++j) {
        auto const& bh = ch.blocks[j];
        if (used[j] || bh.size() != bg.size()) {
          continue;
        }
        VertexGroup vh  = vertex_group(h, bh.front());
        auto        iso = find_group_isomorphism(vg.group, vh.group);
        if (!iso) {
          continue;
        }
        used[j] = matched = true;
        std::vector<std::size_t> tau_g(g.objects.size(), kNone), tau_h(h.objects.size(), kNone);
        for (std::size_t i = 0; i < bg.size(); ++i) {
          f.on_objects[bg[i]] = bh[i];
          tau_g[bg[i]]        = i == 0 ? g.identity[bg[0]] : g.hom(bg[0], bg[i]).front();
          tau_h[bh[i]]        = i == 0 ? h.identity[bh[0]] : h.hom(bh[0], bh[i]).front();
        }
        for (std::size_t x : bg) {
          for (std::size_t y : bg) {
            for (std::size_t a : g.hom(x, y)) {
              std::size_t v  = g.mul(g.mul(tau_g[x], a), g.inverse[tau_g[y]]);
              std::size_t fv = vh.arrow_of[(*iso)[vg.element_of[v]]];
              std::size_t fx = f.on_objects[x], fy = f.on_objects[y];
              f.on_arrows[a] = h.mul(h.mul(h.inverse[tau_h[fx]], fv), tau_h[fy]);
            }
          }
        }
      }
      if (!matched) {
        return std::nullopt;
      }
    }
    auto report = validate_morphism(g, h, f);
    if (!report.ok()) {
      throw Error("find_groupoid_isomorphism: internal error: " + report.failures.front());
    }
    return f;
  }

  std::vector<FinGroupoid> groupoid_catalog(std::vector<std::string> const& objects,
                                            std::size_t                     max_arrows) {
    std::vector<FinGroupoid> out;
    std::size_t              n = objects.size();
    if (n == 0) {
      out.push_back(discrete_groupoid({}));
      return out;
    }
    auto const&              lib = small_groups();
    std::vector<std::size_t> rgs(n, 0);  // restricted growth string
    while (true) {
      std::size_t                           k = *std::max_element(rgs.begin(), rgs.end()) + 1;
      std::vector<std::vector<std::string>> blocks(k);
      for (std::size_t i = 0; i < n; ++i) {
        blocks[rgs[i]].push_back(objects[i]);
      }
      std::vector<std::size_t> pick(k, 0);
      while (true) {
        std::size_t total = 0;
        for (std::size_t b = 0; b < k; ++b) {
          total += blocks[b].size() * blocks[b].size() * lib[pick[b]].group.order();
        }
        if (total <= max_arrows) {
          std::vector<FinGroupoid> parts;
          for (std::size_t b = 0; b < k; ++b) {
            parts.push_back(connected_groupoid(blocks[b], lib[pick[b]].group));
          }
          FinGroupoid g = coproduct_gpd(parts);
          canonicalize(g);
          out.push_back(std::move(g));
        }
        std::size_t b = 0;
        while (b < k && ++pick[b] == lib.size()) {
          pick[b++] = 0;
        }
        if (b == k) {
          break;
        }
      }
      // next restricted growth string
      std::size_t i = n;
      while (i-- > 1) {
        std::size_t m = *std::max_element(rgs.begin(), rgs.begin() + i);
        if (rgs[i] <= m) {
          ++rgs[i];
          std::fill(rgs.begin() + i + 1, rgs.end(), 0);
          break;
        }
      }
      if (i == 0) {
        break;
      }
    }
    return out;
  }

}  // namespace cofib
