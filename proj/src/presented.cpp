#include "cofib/presented.hpp"

#include <algorithm>
#include <numeric>

#include "cofib/todd_coxeter.hpp"

namespace cofib {

  char const* to_string(Decision d) {
    switch (d) {
      case Decision::Equal:
        return "Equal";
      case Decision::Distinct:
        return "Distinct";
      default:
        return "Unknown";
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Words in the free groupoid
  ////////////////////////////////////////////////////////////////////////

  bool well_formed(PresentedGroupoid const& p, PgWord const& w) {
    if (w.src >= p.objects.size() || w.tgt >= p.objects.size()) {
      return false;
    }
    std::size_t at = w.src;
    for (Letter l : w.letters) {
      std::size_t k = generator_of(l);
      if (k >= p.generators.size()) {
        return false;
      }
      auto const& g    = p.generators[k];
      std::size_t from = is_inverse(l) ? g.tgt : g.src;
      std::size_t to   = is_inverse(l) ? g.src : g.tgt;
      if (from != at) {
        return false;
      }
      at = to;
    }
    return at == w.tgt;
  }

  ValidationReport validate_pg(PresentedGroupoid const& p) {
    ValidationReport report;
    for (auto const& g : p.generators) {
      if (g.src >= p.objects.size() || g.tgt >= p.objects.size()) {
        report.add("generator " + g.id + " has an endpoint outside the object set");
      }
    }
    if (!report.ok()) {
      return report;
    }
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      auto const& r = p.relators[i];
      if (!well_formed(p, r)) {
        report.add("relator " + std::to_string(i) + " is not a path");
      } else if (r.src != r.tgt) {
        report.add("relator " + std::to_string(i) + " is not closed");
      }
    }
    return report;
  }

  PgWord pg_identity(std::size_t x) {
    return PgWord{x, x, {}};
  }

  PgWord pg_generator(PresentedGroupoid const& p, std::size_t k, bool inverse) {
    auto const& g = p.generators.at(k);
    return inverse ? PgWord{g.tgt, g.src, {letter(k, true)}} : PgWord{g.src, g.tgt, {letter(k)}};
  }

  PgWord pg_compose(PgWord const& a, PgWord const& b) {
    if (a.tgt != b.src) {
      throw InputError("pg_compose: words are not composable");
    }
    return PgWord{a.src, b.tgt, free_reduce(concat(a.letters, b.letters))};
  }

  PgWord pg_inverse(PgWord const& w) {
    return PgWord{w.tgt, w.src, invert(w.letters)};
  }

  std::string to_string(PresentedGroupoid const& p, PgWord const& w) {
    if (w.letters.empty()) {
      return "1_" + p.objects.at(w.src);
    }
    std::string out;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      Letter l = w.letters[i];
      out += (i ? " " : "") + p.generators.at(generator_of(l)).id + (is_inverse(l) ? "^-1" : "");
    }
    return out;
  }

  PresentedGroupoid pg_free(std::vector<std::string> objects, std::vector<PgGenerator> gens) {
    PresentedGroupoid p{std::move(objects), std::move(gens), {}};
    auto              report = validate_pg(p);
    if (!report.ok()) {
      throw InputError("pg_free: " + report.failures.front());
    }
    return p;
  }

  PresentedGroupoid presentation_of(FinGroupoid const& g) {
    auto              gg = groupoid_generators(g);
    PresentedGroupoid p;
    p.objects = g.objects;
    for (std::size_t a : gg.gens) {
      p.generators.push_back({g.arrows[a].id, g.src(a), g.tgt(a)});
    }
    for (std::size_t r = 0; r < g.objects.size(); ++r) {
      if (gg.root_of[r] != r) {
        continue;
      }
      auto pres = cayley_presentation(gg.vertex[r].group, gg.vertex_gens[r]);
      for (auto const& rel : pres.relators) {
        PgWord w{r, r, {}};
        for (Letter l : rel) {
          w.letters.push_back(letter(gg.gen_of_vertex[r][generator_of(l)], is_inverse(l)));
        }
        p.relators.push_back(std::move(w));
      }
    }
    return p;
  }

  ////////////////////////////////////////////////////////////////////////
  // Vertex groups of presentations
  ////////////////////////////////////////////////////////////////////////

  VertexPresentation vertex_presentation(PresentedGroupoid const& p, std::size_t object) {
    std::size_t n = p.objects.size();
    if (object >= n) {
      throw InputError("vertex_presentation: unknown object");
    }
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (auto const& g : p.generators) {
      parent[find(g.src)] = find(g.tgt);
    }
    VertexPresentation v;
    for (std::size_t x = 0; x < n; ++x) {
      if (find(x) == find(object)) {
        v.objects.push_back(x);
      }
    }
    v.base = *std::min_element(v.objects.begin(), v.objects.end(), [&](auto a, auto b) {
      return p.objects[a] < p.objects[b];
    });
    v.tree.assign(n, PgWord{});
    std::vector<bool> seen(n, false), tree_gen(p.generators.size(), false);
    std::vector<std::size_t> queue{v.base};
    seen[v.base]   = true;
    v.tree[v.base] = pg_identity(v.base);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::size_t x = queue[i];
      for (std::size_t k = 0; k < p.generators.size(); ++k) {
        auto const& g = p.generators[k];
        for (bool inv : {false, true}) {
          std::size_t from = inv ? g.tgt : g.src, to = inv ? g.src : g.tgt;
          if (from == x && !seen[to]) {
            seen[to]     = true;
            tree_gen[k]  = true;
            v.tree[to]   = pg_compose(v.tree[x], pg_generator(p, k, inv));
            queue.push_back(to);
          }
        }
      }
    }
    v.generator.assign(p.generators.size(), GroupWord{});
    for (std::size_t k = 0; k < p.generators.size(); ++k) {
      if (seen[p.generators[k].src] && !tree_gen[k]) {
        v.generator[k] = {letter(v.group.generators++)};
      }
    }
    for (auto const& r : p.relators) {
      if (seen[r.src]) {
        auto w = to_vertex_word(v, r);
        if (!w.empty()) {
          v.group.relators.push_back(std::move(w));
        }
      }
    }
    return v;
  }

  GroupWord to_vertex_word(VertexPresentation const& v, PgWord const& w) {
    GroupWord out;
    for (Letter l : w.letters) {
      auto const& g = v.generator.at(generator_of(l));
      auto        piece = is_inverse(l) ? invert(g) : g;
      out.insert(out.end(), piece.begin(), piece.end());
    }
    return free_reduce(out);
  }

  namespace {

    IntMatrix exponent_matrix(GroupPresentation const& g) {
      IntMatrix m;
      for (auto const& r : g.relators) {
        IntVector row(g.generators, 0);
        for (Letter l : r) {
          row[generator_of(l)] += is_inverse(l) ? -1 : 1;
        }
        m.push_back(std::move(row));
      }
      return m;
    }

    IntVector exponent_vector(GroupWord const& w, std::size_t gens) {
      IntVector x(gens, 0);
      for (Letter l : w) {
        x[generator_of(l)] += is_inverse(l) ? -1 : 1;
      }
      return x;
    }

    bool in_rowspace(IntMatrix const& rels, IntVector const& x, std::size_t cols) {
      auto      snf = smith_normal_form(rels, cols);
      IntVector y   = row_times(x, snf.V, cols);
      for (std::size_t t = 0; t < cols; ++t) {
        Int d = t < snf.diagonal.size() ? snf.diagonal[t] : 0;
        if (d == 0 ? y[t] != 0 : y[t] % d != 0) {
          return false;
        }
      }
      return true;
    }

  }  // namespace

  AbelianInvariants pg_abelian_invariants(PresentedGroupoid const& p, std::size_t object) {
    auto v = vertex_presentation(p, object);
    return abelian_invariants(exponent_matrix(v.group), v.group.generators);
  }

  Decision pg_word_problem_bounded(PresentedGroupoid const& p,
                                   PgWord const&            w1,
                                   PgWord const&            w2,
                                   RewriteBound const&      b) {
    if (!well_formed(p, w1) || !well_formed(p, w2)) {
      throw InputError("pg_word_problem_bounded: malformed word");
    }
    if (w1.src != w2.src || w1.tgt != w2.tgt) {
      return Decision::Distinct;
    }
    if (free_reduce(w1.letters) == free_reduce(w2.letters)) {
      return Decision::Equal;
    }
    auto      v = vertex_presentation(p, w1.src);
    GroupWord u = to_vertex_word(v, pg_compose(w1, pg_inverse(w2)));
    if (u.empty()) {
      return Decision::Equal;
    }
    if (!in_rowspace(exponent_matrix(v.group), exponent_vector(u, v.group.generators),
                     v.group.generators)) {
      return Decision::Distinct;
    }
    ToddCoxeter tc(v.group, b.max_steps);
    bool        done = tc.run();
    auto        end  = tc.trace(u);
    if (end && *end == 0) {
      return Decision::Equal;
    }
    if (done) {
      return Decision::Distinct;
    }
    return Decision::Unknown;
  }

  std::optional<Realization> pg_realize(PresentedGroupoid const& p, RewriteBound const& b) {
    auto report = validate_pg(p);
    if (!report.ok()) {
      throw InputError("pg_realize: " + report.failures.front());
    }
    std::size_t n = p.objects.size();
    struct Comp {
      std::vector<std::size_t> objects;
      FinGroup                 group;
      std::size_t              offset;
    };
    std::vector<Comp>        comps;
    std::vector<std::size_t> comp_of(n, kNone), pos(n, kNone);
    std::vector<Elt>         gen_elt(p.generators.size(), 0);
    std::size_t              total = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (comp_of[x] != kNone) {
        continue;
      }
      auto        v = vertex_presentation(p, x);
      ToddCoxeter tc(v.group, b.max_steps);
      if (!tc.run()) {
        return std::nullopt;
      }
      Comp c{v.objects, tc.group(), total};
      auto imgs = tc.generator_images();
      for (std::size_t i = 0; i < v.objects.size(); ++i) {
        comp_of[v.objects[i]] = comps.size();
        pos[v.objects[i]]     = i;
      }
      for (std::size_t k = 0; k < p.generators.size(); ++k) {
        if (comp_of[p.generators[k].src] == comps.size()) {
          gen_elt[k] = c.group.evaluate(v.generator[k], imgs);
        }
      }
      total += v.objects.size() * v.objects.size() * c.group.order();
      comps.push_back(std::move(c));
    }
    std::vector<Arrow> arrows;
    struct Code {
      std::size_t comp, x, g, y;
    };
    std::vector<Code> code;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      auto const& c = comps[ci];
      std::size_t k = c.objects.size();
      for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = 0; y < k; ++y) {
          for (Elt g = 0; g < c.group.order(); ++g) {
            std::string const& ox = p.objects[c.objects[x]];
            std::string const& oy = p.objects[c.objects[y]];
            std::string id = n == 1 ? c.group.name(g) : "(" + ox + "," + c.group.name(g) + "," + oy + ")";
            arrows.push_back({id, c.objects[x], c.objects[y]});
            code.push_back({ci, x, g, y});
          }
        }
      }
    }
    auto index = [&](std::size_t ci, std::size_t x, Elt g, std::size_t y) {
      auto const& c = comps[ci];
      return c.offset + (x * c.objects.size() + y) * c.group.order() + g;
    };
    Realization out;
    out.groupoid = make_groupoid(p.objects, std::move(arrows), [&](std::size_t a, std::size_t b2) {
      auto const& ca = code[a];
      auto const& cb = code[b2];
      return index(ca.comp, ca.x, comps[ca.comp].group.mul(ca.g, cb.g), cb.y);
    });
    for (std::size_t k = 0; k < p.generators.size(); ++k) {
      auto const& g = p.generators[k];
      out.generator_arrow.push_back(index(comp_of[g.src], pos[g.src], gen_elt[k], pos[g.tgt]));
    }
    return out;
  }

  std::size_t evaluate_in(FinGroupoid const&              h,
                          ObjMap const&                   on_objects,
                          std::vector<std::size_t> const& gen_images,
                          PgWord const&                   w) {
    std::size_t a = h.identity.at(on_objects.at(w.src));
    for (Letter l : w.letters) {
      std::size_t g = gen_images.at(generator_of(l));
      a             = h.mul(a, is_inverse(l) ? h.inverse[g] : g);
      if (a == kNone) {
        throw InputError("evaluate_in: word is not a path in the target");
      }
    }
    return a;
  }

  void for_each_pg_morphism(PresentedGroupoid const&                                    p,
                            FinGroupoid const&                                          h,
                            ObjMap const&                                               om,
                            std::function<bool(std::vector<std::size_t> const&)> const& visit) {
    if (om.size() != p.objects.size()) {
      throw InputError("for_each_pg_morphism: object map has the wrong size");
    }
    std::size_t                           m = p.generators.size();
    std::vector<std::vector<std::size_t>> check_after(m + 1);
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      std::size_t last = 0;
      for (Letter l : p.relators[i].letters) {
        last = std::max(last, generator_of(l) + 1);
      }
      check_after[last].push_back(i);
    }
    std::vector<std::vector<std::size_t>> choices;
    for (auto const& g : p.generators) {
      choices.push_back(h.hom(om.at(g.src), om.at(g.tgt)));
    }
    std::vector<std::size_t> img;
    bool                     stop = false;
    std::function<void()>    recurse = [&]() {
      std::size_t k = img.size();
      for (std::size_t r : check_after[k]) {
        auto const& w = p.relators[r];
        if (evaluate_in(h, om, img, w) != h.identity[om[w.src]]) {
          return;
        }
      }
      if (k == m) {
        stop = !visit(img);
        return;
      }
      for (std::size_t c : choices[k]) {
        img.push_back(c);
        recurse();
        img.pop_back();
        if (stop) {
          return;
        }
      }
    };
    recurse();
  }

  ////////////////////////////////////////////////////////////////////////
  // Base
  ////////////////////////////////////////////////////////////////////////

  Base Base::finite(FinGroupoid const& g) {
    return realized(presentation_of(g), Realization{g, groupoid_generators(g).gens});
  }

  Base Base::presented(PresentedGroupoid p) {
    auto report = validate_pg(p);
    if (!report.ok()) {
      throw InputError("presented base: " + report.failures.front());
    }
    Base b;
    b._pres = std::move(p);
    return b;
  }

  Base Base::realized(PresentedGroupoid p, Realization r) {
    Base b       = presented(std::move(p));
    auto const& g = r.groupoid;
    if (r.generator_arrow.size() != b._pres.generators.size()
        || g.objects.size() != b._pres.objects.size()) {
      throw InputError("realized base: sizes do not match the presentation");
    }
    b._table     = std::move(r.groupoid);
    b._gen_arrow = std::move(r.generator_arrow);
    auto const& t = *b._table;
    b._from_root.assign(t.arrows.size(), PgWord{});
    b._root_arrow.assign(t.objects.size(), kNone);
    std::vector<bool> seen(t.arrows.size(), false);
    auto              cc = connected_components(t);
    for (auto const& block : cc.blocks) {
      std::size_t root = block.front();
      std::size_t e    = t.identity[root];
      seen[e]          = true;
      b._from_root[e]  = pg_identity(root);
      std::vector<std::size_t> queue{e};
      for (std::size_t i = 0; i < queue.size(); ++i) {
        std::size_t a = queue[i];
        if (b._root_arrow[t.tgt(a)] == kNone) {
          b._root_arrow[t.tgt(a)] = a;
        }
        for (std::size_t k = 0; k < b._gen_arrow.size(); ++k) {
          for (bool inv : {false, true}) {
            std::size_t s = inv ? t.inverse[b._gen_arrow[k]] : b._gen_arrow[k];
            if (t.tgt(a) != t.src(s)) {
              continue;
            }
            std::size_t c = t.mul(a, s);
            if (!seen[c]) {
              seen[c]          = true;
              b._from_root[c]  = b._from_root[a];
              b._from_root[c].tgt = t.tgt(c);
              b._from_root[c].letters.push_back(letter(k, inv));
              queue.push_back(c);
            }
          }
        }
      }
    }
    for (std::size_t a = 0; a < t.arrows.size(); ++a) {
      if (!seen[a] && cc.blocks[cc.of[t.src(a)]].front() == t.src(a)) {
        throw InputError("realized base: generators do not generate the groupoid");
      }
    }
    for (std::size_t k = 0; k < b._gen_arrow.size(); ++k) {
      auto const& g = b._pres.generators[k];
      if (t.src(b._gen_arrow[k]) != g.src || t.tgt(b._gen_arrow[k]) != g.tgt) {
        throw InputError("realized base: generator sent to an arrow with wrong endpoints");
      }
    }
    return b;
  }

  FinGroupoid const& Base::table() const {
    if (!_table) {
      throw InfiniteBase("base groupoid is only presented");
    }
    return *_table;
  }

  std::size_t Base::generator_arrow(std::size_t k) const {
    table();
    return _gen_arrow.at(k);
  }

  std::size_t Base::evaluate(PgWord const& w) const {
    auto const& t = table();
    if (!well_formed(_pres, w)) {
      throw InputError("Base::evaluate: malformed word");
    }
    return evaluate_in(t, identity_morphism(t).on_objects, _gen_arrow, w);
  }

  PgWord Base::arrow_word(std::size_t a) const {
    auto const& t = table();
    std::size_t r = _root_arrow.at(t.src(a));
    PgWord      w = pg_compose(pg_inverse(_from_root[r]), _from_root[t.mul(r, a)]);
    return w;
  }

  PgWord apply(BaseMorphism const& f, PgWord const& w) {
    PgWord out{f.on_objects.at(w.src), f.on_objects.at(w.tgt), {}};
    for (Letter l : w.letters) {
      auto const& img   = f.on_generators.at(generator_of(l));
      auto        piece = is_inverse(l) ? invert(img.letters) : img.letters;
      out.letters.insert(out.letters.end(), piece.begin(), piece.end());
    }
    out.letters = free_reduce(out.letters);
    return out;
  }

  BaseMorphism base_morphism(Base const& source, Base const& target, GpdMorphism const& f) {
    BaseMorphism out;
    out.on_objects = f.on_objects;
    for (std::size_t k = 0; k < source.pres().generators.size(); ++k) {
      out.on_generators.push_back(target.arrow_word(f.on_arrows.at(source.generator_arrow(k))));
    }
    return out;
  }

  BaseMorphism compose(BaseMorphism const& f, BaseMorphism const& g) {
    BaseMorphism out;
    for (std::size_t x : f.on_objects) {
      out.on_objects.push_back(g.on_objects.at(x));
    }
    for (auto const& w : f.on_generators) {
      out.on_generators.push_back(apply(g, w));
    }
    return out;
  }

  BaseMorphism identity_base_morphism(PresentedGroupoid const& p) {
    BaseMorphism out;
    out.on_objects.resize(p.objects.size());
    std::iota(out.on_objects.begin(), out.on_objects.end(), 0);
    for (std::size_t k = 0; k < p.generators.size(); ++k) {
      out.on_generators.push_back(pg_generator(p, k));
    }
    return out;
  }

  Decision check_base_morphism(Base const&         source,
                               Base const&         target,
                               BaseMorphism const& f,
                               RewriteBound const& b) {
    auto const& sp = source.pres();
    auto const& tp = target.pres();
    if (f.on_objects.size() != sp.objects.size() || f.on_generators.size() != sp.generators.size()) {
      throw InputError("base morphism has the wrong shape");
    }
    for (std::size_t k = 0; k < sp.generators.size(); ++k) {
      auto const& w = f.on_generators[k];
      if (!well_formed(tp, w) || w.src != f.on_objects.at(sp.generators[k].src)
          || w.tgt != f.on_objects.at(sp.generators[k].tgt)) {
        return Decision::Distinct;
      }
    }
    Decision out = Decision::Equal;
    for (auto const& r : sp.relators) {
      PgWord img = apply(f, r);
      if (target.finite()) {
        if (target.evaluate(img) != target.table().identity[img.src]) {
          return Decision::Distinct;
        }
        continue;
      }
      Decision d = pg_word_problem_bounded(tp, img, pg_identity(img.src), b);
      if (d == Decision::Distinct) {
        return d;
      }
      if (d == Decision::Unknown) {
        out = d;
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // WordGroupoid
  ////////////////////////////////////////////////////////////////////////

  WordGroupoid::WordGroupoid(FinGroupoid base, std::vector<std::string> objects, ObjMap u)
      : _base(std::move(base)), _objects(std::move(objects)), _u(std::move(u)) {
    if (_u.size() != _base.objects.size()) {
      throw InputError("universal_morphism: object map has the wrong size");
    }
    for (std::size_t j : _u) {
      if (j >= _objects.size()) {
        throw InputError("universal_morphism: object map leaves the target set");
      }
    }
    _base_pres = Base::finite(_base);
    _pres      = _base_pres.pres();
    _pres.objects = _objects;
    for (auto& g : _pres.generators) {
      g.src = _u[g.src];
      g.tgt = _u[g.tgt];
    }
    for (auto& r : _pres.relators) {
      r.src = _u[r.src];
      r.tgt = _u[r.tgt];
    }
  }

  GpdWord WordGroupoid::identity(std::size_t j) const {
    if (j >= _objects.size()) {
      throw InputError("WordGroupoid::identity: unknown object");
    }
    return GpdWord{j, j, {}};
  }

  GpdWord WordGroupoid::unit(std::size_t g) const {
    GpdWord w{_u.at(_base.src(g)), _u.at(_base.tgt(g)), {}};
    if (!_base.is_identity(g)) {
      w.letters.push_back(g);
    }
    return w;
  }

  void WordGroupoid::push(std::vector<std::size_t>& stack, std::size_t g) const {
    if (_base.is_identity(g)) {
      return;
    }
    if (!stack.empty() && _base.tgt(stack.back()) == _base.src(g)) {
      std::size_t c = _base.mul(stack.back(), g);
      stack.pop_back();
      if (!_base.is_identity(c)) {
        stack.push_back(c);
      }
      return;
    }
    stack.push_back(g);
  }

  GpdWord WordGroupoid::reduce(std::size_t                     src,
                               std::size_t                     tgt,
                               std::vector<std::size_t> const& letters) const {
    std::size_t at = src;
    for (std::size_t g : letters) {
      if (g >= _base.arrows.size() || _u[_base.src(g)] != at) {
        throw InputError("WordGroupoid: letters are not adjacent");
      }
      at = _u[_base.tgt(g)];
    }
    if (at != tgt) {
      throw InputError("WordGroupoid: word does not end at its target");
    }
    GpdWord w{src, tgt, {}};
    for (std::size_t g : letters) {
      push(w.letters, g);
    }
    return w;
  }

  GpdWord WordGroupoid::compose(GpdWord const& a, GpdWord const& b) const {
    if (a.tgt != b.src) {
      throw InputError("word_compose: words are not composable");
    }
    GpdWord w{a.src, b.tgt, a.letters};
    for (std::size_t g : b.letters) {
      push(w.letters, g);
    }
    return w;
  }

  GpdWord WordGroupoid::inverse(GpdWord const& w) const {
    GpdWord out{w.tgt, w.src, {}};
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
      out.letters.push_back(_base.inverse[*it]);
    }
    return out;
  }

  ValidationReport WordGroupoid::validate_word(GpdWord const& w) const {
    ValidationReport report;
    if (w.src >= _objects.size() || w.tgt >= _objects.size()) {
      report.add("endpoint outside the object set");
      return report;
    }
    if (w.letters.empty()) {
      if (w.src != w.tgt) {
        report.add("empty word between distinct objects");
      }
      return report;
    }
    for (std::size_t g : w.letters) {
      if (g >= _base.arrows.size()) {
        report.add("letter out of range");
        return report;
      }
      if (_base.is_identity(g)) {
        report.add("identity letter " + _base.arrows[g].id);
      }
    }
    if (_u[_base.src(w.letters.front())] != w.src) {
      report.add("first letter does not start at the source");
    }
    if (_u[_base.tgt(w.letters.back())] != w.tgt) {
      report.add("last letter does not end at the target");
    }
    for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
      std::size_t a = w.letters[i], b = w.letters[i + 1];
      if (_u[_base.tgt(a)] != _u[_base.src(b)]) {
        report.add("letters " + std::to_string(i) + "," + std::to_string(i + 1) + " not adjacent");
      }
      if (_base.tgt(a) == _base.src(b)) {
        report.add("letters " + std::to_string(i) + "," + std::to_string(i + 1)
                   + " are composable");
      }
    }
    return report;
  }

  std::vector<GpdWord> WordGroupoid::enumerate(std::size_t j,
                                               std::size_t k,
                                               std::size_t max_length,
                                               std::size_t cap) const {
    std::vector<GpdWord> out;
    if (j == k && cap > 0) {
      out.push_back(identity(j));
    }
    std::vector<std::vector<std::size_t>> frontier{{}};
    for (std::size_t len = 1; len <= max_length && out.size() < cap; ++len) {
      std::vector<std::vector<std::size_t>> next;
      for (auto const& w : frontier) {
        std::size_t at = w.empty() ? j : _u[_base.tgt(w.back())];
        for (std::size_t g = 0; g < _base.arrows.size(); ++g) {
          if (_base.is_identity(g) || _u[_base.src(g)] != at
              || (!w.empty() && _base.tgt(w.back()) == _base.src(g))) {
            continue;
          }
          auto v = w;
          v.push_back(g);
          if (_u[_base.tgt(g)] == k && out.size() < cap) {
            out.push_back(GpdWord{j, k, v});
          }
          if (next.size() < cap * 4) {
            next.push_back(std::move(v));
          }
        }
      }
      frontier = std::move(next);
      if (frontier.empty()) {
        break;
      }
    }
    return out;
  }

  BaseMorphism WordGroupoid::unit_morphism() const {
    BaseMorphism out;
    out.on_objects = _u;
    for (std::size_t k = 0; k < _pres.generators.size(); ++k) {
      out.on_generators.push_back(pg_generator(_pres, k));
    }
    return out;
  }

  PgWord WordGroupoid::to_pg(GpdWord const& w) const {
    PgWord out = pg_identity(w.src);
    for (std::size_t g : w.letters) {
      PgWord piece = _base_pres.arrow_word(g);
      piece.src    = _u[piece.src];
      piece.tgt    = _u[piece.tgt];
      out          = pg_compose(out, piece);
    }
    return out;
  }

  std::string WordGroupoid::to_string(GpdWord const& w) const {
    if (w.letters.empty()) {
      return "1_" + _objects.at(w.src);
    }
    std::string out = "[";
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      out += (i ? "," : "") + _base.arrows[w.letters[i]].id;
    }
    return out + "]";
  }

  WordGroupoid universal_morphism(std::vector<std::string> const& j_objects,
                                  ObjMap const&                   u,
                                  FinGroupoid const&              g) {
    return WordGroupoid(g, j_objects, u);
  }

}  // namespace cofib
