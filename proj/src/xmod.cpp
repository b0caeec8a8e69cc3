#include "cofib/xmod.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cofib/todd_coxeter.hpp"

namespace cofib {

  namespace {

    bool is_bijection(std::vector<Elt> const& f, std::size_t n) {
      if (f.size() != n) {
        return false;
      }
      std::vector<bool> hit(n, false);
      for (Elt e : f) {
        if (e >= n || hit[e]) {
          return false;
        }
        hit[e] = true;
      }
      return true;
    }

    std::string arrow_name(FinGroupoid const& g, std::size_t a) {
      return g.arrows[a].id;
    }

    // Value of an element word of the fibre at `at` under a right action.
    Elt act_on(XModTable const& x, std::size_t arrow, Elt m) {
      return x.action[arrow][m];
    }

  }  // namespace

  ValidationReport validate_xmod(XModTable const& x) {
    ValidationReport report;
    auto const&      g = x.base;
    if (x.fibres.size() != g.objects.size() || x.mu.size() != g.objects.size()
        || x.action.size() != g.arrows.size()) {
      report.add("crossed module data does not match the base groupoid");
      return report;
    }
    for (std::size_t o = 0; o < g.objects.size(); ++o) {
      auto const& m = x.fibres[o];
      if (m.order() > kMaxFibreOrder) {
        report.add("fibre at " + g.objects[o] + " exceeds the order limit");
      }
      if (x.mu[o].size() != m.order()) {
        report.add("boundary at " + g.objects[o] + " has the wrong size");
        continue;
      }
      for (Elt e = 0; e < m.order(); ++e) {
        std::size_t a = x.mu[o][e];
        if (a >= g.arrows.size() || g.src(a) != o || g.tgt(a) != o) {
          report.add("boundary of " + m.name(e) + " at " + g.objects[o] + " is not a loop there");
        }
      }
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      if (!is_bijection(x.action[a], x.fibres[g.src(a)].order())
          || x.fibres[g.src(a)].order() != x.fibres[g.tgt(a)].order()) {
        report.add("action of " + arrow_name(g, a) + " is not a bijection");
      }
    }
    if (!report.ok()) {
      return report;
    }
    for (std::size_t o = 0; o < g.objects.size(); ++o) {
      auto const& m = x.fibres[o];
      for (Elt e = 0; e < m.order(); ++e) {
        for (Elt f = 0; f < m.order(); ++f) {
          if (x.mu[o][m.mul(e, f)] != g.mul(x.mu[o][e], x.mu[o][f])) {
            report.add("boundary at " + g.objects[o] + " is not a homomorphism");
            e = m.order() - 1;
            break;
          }
        }
      }
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      auto const& m  = x.fibres[g.src(a)];
      auto const& n  = x.fibres[g.tgt(a)];
      auto const& fa = x.action[a];
      bool        hom = true;
      for (Elt e = 0; e < m.order() && hom; ++e) {
        for (Elt f = 0; f < m.order() && hom; ++f) {
          hom = fa[m.mul(e, f)] == n.mul(fa[e], fa[f]);
        }
      }
      if (!hom) {
        report.add("action of " + arrow_name(g, a) + " is not a homomorphism");
      }
      if (g.is_identity(a)) {
        for (Elt e = 0; e < m.order(); ++e) {
          if (fa[e] != e) {
            report.add("identity " + arrow_name(g, a) + " acts nontrivially");
            break;
          }
        }
      }
    }
    for (std::size_t p = 0; p < g.arrows.size(); ++p) {
      for (std::size_t q = 0; q < g.arrows.size(); ++q) {
        std::size_t pq = g.mul(p, q);
        if (pq == kNone) {
          continue;
        }
        for (Elt e = 0; e < x.fibres[g.src(p)].order(); ++e) {
          if (x.action[pq][e] != x.action[q][x.action[p][e]]) {
            report.add("action is not functorial on (" + arrow_name(g, p) + ","
                       + arrow_name(g, q) + ")");
            break;
          }
        }
      }
    }
    // CM1: mu(m^p) = p^-1 mu(m) p
    for (std::size_t p = 0; p < g.arrows.size(); ++p) {
      std::size_t s = g.src(p), t = g.tgt(p);
      for (Elt e = 0; e < x.fibres[s].order(); ++e) {
        std::size_t lhs = x.mu[t][x.action[p][e]];
        std::size_t rhs = g.mul(g.mul(g.inverse[p], x.mu[s][e]), p);
        if (lhs != rhs) {
          report.add("CM1 fails for (" + x.fibres[s].name(e) + ", " + arrow_name(g, p) + ")");
        }
      }
    }
    // CM2: m^-1 n m = n^{mu m}
    for (std::size_t o = 0; o < g.objects.size(); ++o) {
      auto const& m = x.fibres[o];
      for (Elt a = 0; a < m.order(); ++a) {
        for (Elt b = 0; b < m.order(); ++b) {
          if (m.conj(b, a) != x.action[x.mu[o][a]][b]) {
            report.add("CM2 fails for (" + m.name(a) + ", " + m.name(b) + ") at "
                       + g.objects[o]);
          }
        }
      }
    }
    return report;
  }

  XModTable zero_xmod(FinGroupoid const& base) {
    XModTable x;
    x.base = base;
    x.fibres.assign(base.objects.size(), trivial_group());
    for (std::size_t o = 0; o < base.objects.size(); ++o) {
      x.mu.push_back({base.identity[o]});
    }
    x.action.assign(base.arrows.size(), std::vector<Elt>{0});
    return x;
  }

  XModTable identity_xmod(FinGroup const& g) {
    std::vector<GroupHom> action;
    for (Elt p = 0; p < g.order(); ++p) {
      GroupHom a(g.order());
      for (Elt m = 0; m < g.order(); ++m) {
        a[m] = g.conj(m, p);
      }
      action.push_back(std::move(a));
    }
    GroupHom id(g.order());
    std::iota(id.begin(), id.end(), 0);
    return group_xmod(g, g, id, action);
  }

  XModTable group_xmod(FinGroup const& m, FinGroup const& p, GroupHom const& mu,
                       std::vector<GroupHom> const& action) {
    if (mu.size() != m.order() || action.size() != p.order()) {
      throw InputError("group_xmod: boundary or action of the wrong size");
    }
    XModTable x;
    x.base   = group_groupoid(p);
    x.fibres = {m};
    x.mu     = {mu};
    x.action = action;
    return x;
  }

  XModTable xmod_pullback(FinGroupoid const& p, GpdMorphism const& f, XModTable const& n) {
    auto report = validate_morphism(p, n.base, f);
    if (!report.ok()) {
      throw InputError("xmod_pullback: " + report.failures.front());
    }
    XModTable x;
    x.base = p;
    std::vector<std::map<std::pair<std::size_t, Elt>, Elt>> index(p.objects.size());
    std::vector<std::vector<std::pair<std::size_t, Elt>>>   elems(p.objects.size());
    for (std::size_t o = 0; o < p.objects.size(); ++o) {
      std::size_t fo = f.on_objects[o];
      auto const& nf = n.fibres[fo];
      // the identity pair first
      elems[o].push_back({p.identity[o], nf.identity()});
      for (std::size_t a : p.hom(o, o)) {
        for (Elt e = 0; e < nf.order(); ++e) {
          if (f.on_arrows[a] == n.mu[fo][e] && !(a == p.identity[o] && e == nf.identity())) {
            elems[o].push_back({a, e});
          }
        }
      }
      if (elems[o].size() > kMaxFibreOrder) {
        throw TooLarge("xmod_pullback: fibre exceeds the order limit");
      }
      std::vector<std::string> names;
      for (std::size_t i = 0; i < elems[o].size(); ++i) {
        index[o][elems[o][i]] = i;
        names.push_back("(" + p.arrows[elems[o][i].first].id + "," + nf.name(elems[o][i].second)
                        + ")");
      }
      std::vector<std::vector<Elt>> table(elems[o].size(), std::vector<Elt>(elems[o].size()));
      for (std::size_t i = 0; i < elems[o].size(); ++i) {
        for (std::size_t j = 0; j < elems[o].size(); ++j) {
          auto [a, e] = elems[o][i];
          auto [b, d] = elems[o][j];
          table[i][j] = index[o].at({p.mul(a, b), nf.mul(e, d)});
        }
      }
      x.fibres.emplace_back(std::move(names), std::move(table));
      std::vector<std::size_t> mu;
      for (auto const& [a, e] : elems[o]) {
        mu.push_back(a);
      }
      x.mu.push_back(std::move(mu));
    }
    for (std::size_t a = 0; a < p.arrows.size(); ++a) {
      std::size_t      s = p.src(a), t = p.tgt(a);
      std::vector<Elt> act;
      for (auto const& [q, e] : elems[s]) {
        std::size_t conj = p.mul(p.mul(p.inverse[a], q), a);
        act.push_back(index[t].at({conj, n.action[f.on_arrows[a]][e]}));
      }
      x.action.push_back(std::move(act));
    }
    return x;
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphisms of tables
  ////////////////////////////////////////////////////////////////////////

  ValidationReport validate_xmod_morphism(XModTable const& m, XModTable const& n,
                                          GpdMorphism const& f, XModMorphism const& t) {
    ValidationReport report;
    auto const&      g = m.base;
    if (t.on_objects.size() != g.objects.size()) {
      report.add("morphism must give one map per object");
      return report;
    }
    for (std::size_t o = 0; o < g.objects.size(); ++o) {
      std::size_t fo = f.on_objects[o];
      auto const& th = t.on_objects[o];
      if (!is_homomorphism(m.fibres[o], n.fibres[fo], th)) {
        report.add("map at " + g.objects[o] + " is not a homomorphism");
        continue;
      }
      for (Elt e = 0; e < m.fibres[o].order(); ++e) {
        if (n.mu[fo][th[e]] != f.on_arrows[m.mu[o][e]]) {
          report.add("boundaries do not commute at " + g.objects[o]);
          break;
        }
      }
    }
    if (!report.ok()) {
      return report;
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      std::size_t s = g.src(a), u = g.tgt(a);
      for (Elt e = 0; e < m.fibres[s].order(); ++e) {
        if (t.on_objects[u][m.action[a][e]] != n.action[f.on_arrows[a]][t.on_objects[s][e]]) {
          report.add("not equivariant along " + g.arrows[a].id);
          break;
        }
      }
    }
    return report;
  }

  void for_each_xmod_morphism(XModTable const& m, XModTable const& n, GpdMorphism const& f,
                              std::function<bool(XModMorphism const&)> const& visit) {
    auto const& g    = m.base;
    std::size_t nobj = g.objects.size();
    std::vector<std::vector<GroupHom>> cand(nobj);
    for (std::size_t o = 0; o < nobj; ++o) {
      std::size_t fo = f.on_objects[o];
      for_each_homomorphism(m.fibres[o], n.fibres[fo], [&](GroupHom const& th) {
        for (Elt e = 0; e < th.size(); ++e) {
          if (n.mu[fo][th[e]] != f.on_arrows[m.mu[o][e]]) {
            return true;
          }
        }
        cand[o].push_back(th);
        return true;
      });
    }
    auto         gens = groupoid_generators(g).gens;
    XModMorphism cur;
    cur.on_objects.assign(nobj, GroupHom{});
    std::function<bool(std::size_t)> rec = [&](std::size_t o) -> bool {
      if (o == nobj) {
        return visit(cur);
      }
      for (auto const& c : cand[o]) {
        cur.on_objects[o] = c;
        bool ok           = true;
        for (std::size_t a : gens) {
          std::size_t s = g.src(a), u = g.tgt(a);
          if (std::max(s, u) != o) {
            continue;
          }
          for (Elt e = 0; e < m.fibres[s].order() && ok; ++e) {
            ok = cur.on_objects[u][m.action[a][e]]
                 == n.action[f.on_arrows[a]][cur.on_objects[s][e]];
          }
          if (!ok) {
            break;
          }
        }
        if (ok && !rec(o + 1)) {
          return false;
        }
      }
      return true;
    };
    rec(0);
  }

  std::size_t count_xmod_morphisms(XModTable const& m, XModTable const& n, GpdMorphism const& f) {
    std::size_t count = 0;
    for_each_xmod_morphism(m, n, f, [&](XModMorphism const&) {
      ++count;
      return true;
    });
    return count;
  }

  std::optional<XModMorphism> find_xmod_isomorphism(XModTable const& m, XModTable const& n) {
    if (m.base.objects.size() != n.base.objects.size()
        || m.base.arrows.size() != n.base.arrows.size()) {
      return std::nullopt;
    }
    for (std::size_t o = 0; o < m.fibres.size(); ++o) {
      if (m.fibres[o].order() != n.fibres[o].order()) {
        return std::nullopt;
      }
    }
    std::optional<XModMorphism> found;
    for_each_xmod_morphism(m, n, identity_morphism(m.base), [&](XModMorphism const& t) {
      for (std::size_t o = 0; o < t.on_objects.size(); ++o) {
        if (!is_bijection(t.on_objects[o], n.fibres[o].order())) {
          return true;
        }
      }
      found = t;
      return false;
    });
    return found;
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentations
  ////////////////////////////////////////////////////////////////////////

  ValidationReport validate_fp_xmod(FpXMod const& x) {
    ValidationReport report;
    auto const&      pres = x.base.pres();
    for (auto const& g : x.generators) {
      if (g.at >= pres.objects.size()) {
        report.add("generator " + g.id + " at an unknown object");
      } else if (!well_formed(pres, g.boundary) || g.boundary.src != g.at
                 || g.boundary.tgt != g.at) {
        report.add("boundary of " + g.id + " is not a loop at its object");
      }
    }
    if (!report.ok()) {
      return report;
    }
    for (std::size_t r = 0; r < x.relators.size(); ++r) {
      auto const& rel   = x.relators[r];
      std::string where = "relator " + std::to_string(r) + ": ";
      for (auto const& l : rel) {
        if (l.gen >= x.generators.size()) {
          report.add(where + "unknown generator");
        } else if (!well_formed(pres, l.act) || l.act.src != x.generators[l.gen].at) {
          report.add(where + "action word does not start at the generator's object");
        } else if (l.act.tgt != rel.front().act.tgt) {
          report.add(where + "letters end at different objects");
        }
      }
    }
    return report;
  }

  namespace {

    // q^-1 d q, inverted if requested.
    PgWord letter_boundary(FpXMod const& x, XLetter const& l) {
      PgWord w = pg_compose(pg_compose(pg_inverse(l.act), x.generators[l.gen].boundary), l.act);
      return l.inverse ? pg_inverse(w) : w;
    }

  }  // namespace

  Decision check_relator_boundaries(FpXMod const& x, RewriteBound const& b) {
    Decision overall = Decision::Equal;
    for (auto const& rel : x.relators) {
      if (rel.empty()) {
        continue;
      }
      PgWord w = pg_identity(rel.front().act.tgt);
      for (auto const& l : rel) {
        w = pg_compose(w, letter_boundary(x, l));
      }
      Decision d;
      if (x.base.finite()) {
        d = x.base.table().is_identity(x.base.evaluate(w)) ? Decision::Equal : Decision::Distinct;
      } else {
        d = pg_word_problem_bounded(x.base.pres(), w, pg_identity(w.src), b);
      }
      if (d == Decision::Distinct) {
        return d;
      }
      if (d == Decision::Unknown) {
        overall = d;
      }
    }
    return overall;
  }

  FpXMod to_fp(XModTable const& m) {
    auto report = validate_xmod(m);
    if (!report.ok()) {
      throw InputError("to_fp: " + report.failures.front());
    }
    auto const& g = m.base;
    FpXMod      x;
    x.base            = Base::finite(g);
    auto const& pres  = x.base.pres();
    std::size_t nobj  = g.objects.size();
    std::vector<std::vector<Elt>>       gens(nobj);
    std::vector<std::vector<GroupWord>> words(nobj);
    std::vector<std::size_t>            off(nobj + 1, 0);
    for (std::size_t o = 0; o < nobj; ++o) {
      gens[o]    = generating_set(m.fibres[o]);
      words[o]   = cayley_words(m.fibres[o], gens[o]);
      off[o + 1] = off[o] + gens[o].size();
      for (Elt s : gens[o]) {
        x.generators.push_back(
            {g.objects[o] + ":" + m.fibres[o].name(s), o, x.base.arrow_word(m.mu[o][s])});
      }
      for (auto const& rel : cayley_presentation(m.fibres[o], gens[o]).relators) {
        XRelator r;
        for (Letter l : rel) {
          r.push_back({off[o] + generator_of(l), pg_identity(o), is_inverse(l)});
        }
        x.relators.push_back(std::move(r));
      }
    }
    for (std::size_t k = 0; k < pres.generators.size(); ++k) {
      std::size_t a = x.base.generator_arrow(k);
      std::size_t s = g.src(a), t = g.tgt(a);
      for (std::size_t i = 0; i < gens[s].size(); ++i) {
        Elt      img = m.action[a][gens[s][i]];
        XRelator r{{off[s] + i, pg_generator(pres, k), false}};
        auto const& w = words[t][img];
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
          r.push_back({off[t] + generator_of(*it), pg_identity(t), !is_inverse(*it)});
        }
        x.relators.push_back(std::move(r));
      }
    }
    return x;
  }

  FpXMod fp_xmod_induce(FpXMod const& m, Base const& target, BaseMorphism const& f) {
    if (f.on_objects.size() != m.base.pres().objects.size()) {
      throw InputError("fp_xmod_induce: object map has the wrong domain");
    }
    FpXMod out;
    out.base = target;
    for (auto const& g : m.generators) {
      out.generators.push_back({g.id, f.on_objects[g.at], apply(f, g.boundary)});
    }
    for (auto const& rel : m.relators) {
      XRelator r;
      for (auto const& l : rel) {
        r.push_back({l.gen, apply(f, l.act), l.inverse});
      }
      out.relators.push_back(std::move(r));
    }
    return out;
  }

  FpXMod xmod_induce(GpdMorphism const& f, FinGroupoid const& target, XModTable const& m) {
    auto report = validate_morphism(m.base, target, f);
    if (!report.ok()) {
      throw InputError("xmod_induce: " + report.failures.front());
    }
    FpXMod fp = to_fp(m);
    Base   tb = Base::finite(target);
    return fp_xmod_induce(fp, tb, base_morphism(fp.base, tb, f));
  }

  FpXMod free_identity_xmod(std::vector<std::string> const& r) {
    std::vector<PgGenerator> loops;
    for (std::size_t i = 0; i < r.size(); ++i) {
      loops.push_back({r[i], i, i});
    }
    FpXMod x;
    x.base = Base::presented(pg_free(r, loops));
    for (std::size_t i = 0; i < r.size(); ++i) {
      x.generators.push_back({r[i], i, pg_generator(x.base.pres(), i)});
    }
    return x;
  }

  FpXMod free_xmod(std::vector<XRelatorSpec> const& w, Base const& p) {
    std::vector<std::string> ids;
    BaseMorphism             omega;
    for (auto const& spec : w) {
      if (spec.at >= p.pres().objects.size() || !well_formed(p.pres(), spec.word)
          || spec.word.src != spec.at || spec.word.tgt != spec.at) {
        throw InputError("free_xmod: image of " + spec.id + " is not a loop at its base point");
      }
      ids.push_back(spec.id);
      omega.on_objects.push_back(spec.at);
      omega.on_generators.push_back(spec.word);
    }
    return fp_xmod_induce(free_identity_xmod(ids), p, omega);
  }

  ExpandedFibre expand_fibre(FpXMod const& x, std::size_t y, RewriteBound const& b) {
    auto const&   t = x.base.table();
    ExpandedFibre e;
    e.object = y;
    std::vector<std::vector<std::size_t>> index(x.generators.size(),
                                                std::vector<std::size_t>(t.arrows.size(), kNone));
    std::vector<std::size_t> bd;
    for (std::size_t k = 0; k < x.generators.size(); ++k) {
      bd.push_back(x.base.evaluate(x.generators[k].boundary));
      for (std::size_t q : t.hom(x.generators[k].at, y)) {
        index[k][q] = e.pairs.size();
        e.pairs.push_back({k, q});
      }
    }
    std::size_t n = e.pairs.size();
    if (n * n > b.max_enumeration) {
      throw TooLarge("expand_fibre: " + std::to_string(n) + " generators exceed the budget");
    }
    e.group.generators = n;
    for (auto const& rel : x.relators) {
      if (rel.empty()) {
        continue;
      }
      std::size_t              z = rel.front().act.tgt;
      std::vector<std::size_t> ends;
      for (auto const& l : rel) {
        ends.push_back(x.base.evaluate(l.act));
      }
      for (std::size_t q : t.hom(z, y)) {
        GroupWord w;
        for (std::size_t i = 0; i < rel.size(); ++i) {
          w.push_back(letter(index[rel[i].gen][t.mul(ends[i], q)], rel[i].inverse));
        }
        w = free_reduce(w);
        if (!w.empty()) {
          e.group.relators.push_back(std::move(w));
        }
      }
    }
    e.peiffer_begin = e.group.relators.size();
    for (std::size_t i = 0; i < n; ++i) {
      auto [k1, q1]  = e.pairs[i];
      std::size_t da = t.mul(t.mul(t.inverse[q1], bd[k1]), q1);
      for (std::size_t j = 0; j < n; ++j) {
        auto [k2, q2]  = e.pairs[j];
        std::size_t jj = index[k2][t.mul(q2, da)];
        GroupWord   w  = free_reduce({letter(i, true), letter(j), letter(i), letter(jj, true)});
        if (!w.empty()) {
          e.group.relators.push_back(std::move(w));
        }
      }
    }
    return e;
  }

  std::size_t expanded_boundary(FpXMod const& x, ExpandedFibre const& e, GroupWord const& w) {
    auto const& t   = x.base.table();
    std::size_t out = t.identity[e.object];
    for (Letter l : w) {
      auto [k, q]   = e.pairs[generator_of(l)];
      std::size_t d = t.mul(t.mul(t.inverse[q], x.base.evaluate(x.generators[k].boundary)), q);
      out           = t.mul(out, is_inverse(l) ? t.inverse[d] : d);
    }
    return out;
  }

  std::optional<RealizedXMod> bounded_realize(FpXMod const& x, RewriteBound const& b) {
    auto const& t      = x.base.table();
    auto        report = validate_fp_xmod(x);
    if (!report.ok()) {
      throw InputError("bounded_realize: " + report.failures.front());
    }
    if (check_relator_boundaries(x, b) != Decision::Equal) {
      throw InputError("bounded_realize: a relator has nontrivial boundary");
    }
    std::size_t                  nobj = t.objects.size();
    std::vector<ExpandedFibre>   fib;
    std::vector<std::vector<Elt>> images;
    std::vector<std::vector<GroupWord>> words;
    RealizedXMod                 out;
    out.table.base = t;
    for (std::size_t y = 0; y < nobj; ++y) {
      std::size_t n = 0;
      for (auto const& g : x.generators) {
        n += t.hom(g.at, y).size();
      }
      if (n * n > b.max_enumeration) {
        return std::nullopt;
      }
      fib.push_back(expand_fibre(x, y, b));
      ToddCoxeter tc(fib.back().group, b.max_steps);
      if (!tc.run()) {
        return std::nullopt;
      }
      if (tc.size() > kMaxFibreOrder) {
        throw TooLarge("bounded_realize: fibre of order " + std::to_string(tc.size())
                       + " exceeds the limit");
      }
      out.table.fibres.push_back(tc.group(kMaxFibreOrder));
      images.push_back(tc.generator_images());
      words.push_back(tc.coset_words());
      std::vector<std::size_t> mu;
      for (auto const& w : words.back()) {
        mu.push_back(expanded_boundary(x, fib.back(), w));
      }
      out.table.mu.push_back(std::move(mu));
    }
    out.generator_element.assign(x.generators.size(), std::vector<Elt>(t.arrows.size(), kNone));
    std::vector<std::vector<std::size_t>> index(x.generators.size(),
                                                std::vector<std::size_t>(t.arrows.size(), kNone));
    for (std::size_t y = 0; y < nobj; ++y) {
      for (std::size_t i = 0; i < fib[y].pairs.size(); ++i) {
        auto [k, q]                   = fib[y].pairs[i];
        out.generator_element[k][q]   = images[y][i];
        index[k][q]                   = i;
      }
    }
    for (std::size_t a = 0; a < t.arrows.size(); ++a) {
      std::size_t      s = t.src(a), u = t.tgt(a);
      auto const&      target = out.table.fibres[u];
      std::vector<Elt> act;
      for (auto const& w : words[s]) {
        Elt e = target.identity();
        for (Letter l : w) {
          auto [k, q] = fib[s].pairs[generator_of(l)];
          Elt g       = out.generator_element[k][t.mul(q, a)];
          e           = target.mul(e, is_inverse(l) ? target.inv(g) : g);
        }
        act.push_back(e);
      }
      out.table.action.push_back(std::move(act));
    }
    auto valid = validate_xmod(out.table);
    if (!valid.ok()) {
      throw Error("bounded_realize: realization failed validation: " + valid.failures.front());
    }
    return out;
  }

  void for_each_fp_morphism(FpXMod const& x, XModTable const& n,
                            std::function<bool(std::vector<Elt> const&)> const& visit) {
    auto const& t = x.base.table();
    if (t.objects.size() != n.base.objects.size() || t.arrows.size() != n.base.arrows.size()) {
      throw InputError("for_each_fp_morphism: target lies over a different base");
    }
    std::size_t                   ng = x.generators.size();
    std::vector<std::vector<Elt>> cand(ng);
    for (std::size_t k = 0; k < ng; ++k) {
      std::size_t at = x.generators[k].at;
      std::size_t bd = x.base.evaluate(x.generators[k].boundary);
      for (Elt e = 0; e < n.fibres[at].order(); ++e) {
        if (n.mu[at][e] == bd) {
          cand[k].push_back(e);
        }
      }
    }
    // relators checked once their last generator is assigned
    struct Compiled {
      std::size_t                                    object;
      std::vector<std::tuple<std::size_t, std::size_t, bool>> letters;  // gen, arrow, inverse
    };
    std::vector<std::vector<Compiled>> due(ng);
    std::vector<Compiled>              constant;
    for (auto const& rel : x.relators) {
      if (rel.empty()) {
        continue;
      }
      Compiled    c{rel.front().act.tgt, {}};
      std::size_t last = 0;
      for (auto const& l : rel) {
        c.letters.emplace_back(l.gen, x.base.evaluate(l.act), l.inverse);
        last = std::max(last, l.gen);
      }
      due[last].push_back(std::move(c));
    }
    std::vector<Elt> img(ng, 0);
    auto holds = [&](Compiled const& c) {
      auto const& grp = n.fibres[c.object];
      Elt         e   = grp.identity();
      for (auto const& [g, a, inv] : c.letters) {
        Elt v = n.action[a][img[g]];
        e     = grp.mul(e, inv ? grp.inv(v) : v);
      }
      return e == grp.identity();
    };
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
      if (k == ng) {
        return visit(img);
      }
      for (Elt e : cand[k]) {
        img[k]  = e;
        bool ok = std::all_of(due[k].begin(), due[k].end(), holds);
        if (ok && !rec(k + 1)) {
          return false;
        }
      }
      return true;
    };
    rec(0);
  }

  std::size_t count_fp_morphisms(FpXMod const& x, XModTable const& n) {
    std::size_t count = 0;
    for_each_fp_morphism(x, n, [&](std::vector<Elt> const&) {
      ++count;
      return true;
    });
    return count;
  }

  XModAbelianization peiffer_abelianize(FpXMod const& x) {
    auto report = validate_fp_xmod(x);
    if (!report.ok()) {
      throw InputError("peiffer_abelianize: " + report.failures.front());
    }
    XModAbelianization out;
    std::function<PgWord(PgWord const&)> map_act;
    if (x.base.finite()) {
      auto const&              t = x.base.table();
      std::vector<std::size_t> bds;
      for (auto const& g : x.generators) {
        bds.push_back(x.base.evaluate(g.boundary));
      }
      out.cokernel     = quotient_groupoid(t, normal_closure(t, bds));
      out.module.base  = Base::finite(out.cokernel->groupoid);
      map_act          = [&](PgWord const& w) {
        return out.module.base.arrow_word(out.cokernel->projection.on_arrows[x.base.evaluate(w)]);
      };
    } else {
      PresentedGroupoid p = x.base.pres();
      for (auto const& g : x.generators) {
        if (!g.boundary.letters.empty()) {
          p.relators.push_back(g.boundary);
        }
      }
      out.module.base = Base::presented(std::move(p));
      map_act         = [](PgWord const& w) { return w; };
    }
    for (auto const& g : x.generators) {
      out.module.generators.push_back({g.id, g.at});
    }
    for (auto const& rel : x.relators) {
      ModRelation r;
      for (auto const& l : rel) {
        r.push_back({l.inverse ? -1 : 1, l.gen, map_act(l.act)});
      }
      if (!r.empty()) {
        out.module.relations.push_back(std::move(r));
      }
    }
    return out;
  }

  XModRetraction retract_xmod_to_vertex(XModTable const& x, std::size_t x0) {
    auto report = validate_xmod(x);
    if (!report.ok()) {
      throw InputError("retract_xmod_to_vertex: " + report.failures.front());
    }
    auto const&    g = x.base;
    XModRetraction out;
    out.base        = spanning_tree_retraction(g, x0);
    auto const& vg  = out.base.vertex;
    std::vector<std::size_t> mu;
    for (std::size_t a : x.mu[x0]) {
      mu.push_back(vg.element_of[a]);
    }
    std::vector<GroupHom> action;
    for (Elt e = 0; e < vg.group.order(); ++e) {
      action.push_back(x.action[vg.arrow_of[e]]);
    }
    out.vertex = group_xmod(x.fibres[x0], vg.group, mu, action);
    for (std::size_t o = 0; o < g.objects.size(); ++o) {
      out.s.push_back(x.action[g.inverse[out.base.tau[o]]]);
    }
    return out;
  }

  FpXMod retract_fp_to_vertex(FpXMod const& x, std::size_t x0) {
    auto const& t  = x.base.table();
    auto        r  = spanning_tree_retraction(t, x0);
    auto        vb = Base::finite(group_groupoid(r.vertex.group));
    auto        to_vertex = [&](PgWord const& w) {
      // arrow index of the one-object groupoid equals the element index
      return vb.arrow_word(r.r[x.base.evaluate(w)]);
    };
    FpXMod out;
    out.base = vb;
    for (auto const& g : x.generators) {
      out.generators.push_back({g.id, 0, to_vertex(g.boundary)});
    }
    for (auto const& rel : x.relators) {
      XRelator nr;
      for (auto const& l : rel) {
        nr.push_back({l.gen, to_vertex(l.act), l.inverse});
      }
      out.relators.push_back(std::move(nr));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Catalog
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Right actions of P on M are homomorphisms into Aut(M) with the product
    // "a then b", so that alpha_{pq} = alpha_q o alpha_p.
    std::vector<std::vector<GroupHom>> right_actions(FinGroup const& m, FinGroup const& p) {
      auto                             autos = automorphisms(m);
      std::map<GroupHom, std::size_t>  index;
      for (std::size_t i = 0; i < autos.size(); ++i) {
        index[autos[i]] = i;
      }
      std::vector<std::vector<Elt>> table(autos.size(), std::vector<Elt>(autos.size()));
      for (std::size_t i = 0; i < autos.size(); ++i) {
        for (std::size_t j = 0; j < autos.size(); ++j) {
          GroupHom c(m.order());
          for (Elt e = 0; e < m.order(); ++e) {
            c[e] = autos[j][autos[i][e]];
          }
          table[i][j] = index.at(c);
        }
      }
      FinGroup aut(std::vector<std::string>(autos.size(), "a"), std::move(table));
      std::vector<std::vector<GroupHom>> out;
      for_each_homomorphism(p, aut, [&](GroupHom const& h) {
        std::vector<GroupHom> alpha;
        for (Elt q = 0; q < p.order(); ++q) {
          alpha.push_back(autos[h[q]]);
        }
        out.push_back(std::move(alpha));
        return true;
      });
      return out;
    }

    bool is_crossed(FinGroup const& m, FinGroup const& p, GroupHom const& mu,
                    std::vector<GroupHom> const& alpha) {
      for (Elt q = 0; q < p.order(); ++q) {
        for (Elt e = 0; e < m.order(); ++e) {
          if (mu[alpha[q][e]] != p.conj(mu[e], q)) {
            return false;
          }
        }
      }
      for (Elt a = 0; a < m.order(); ++a) {
        for (Elt b = 0; b < m.order(); ++b) {
          if (m.conj(b, a) != alpha[mu[a]][b]) {
            return false;
          }
        }
      }
      return true;
    }

    std::vector<std::size_t> encode(GroupHom const& mu, std::vector<GroupHom> const& alpha) {
      std::vector<std::size_t> key(mu.begin(), mu.end());
      for (auto const& a : alpha) {
        key.insert(key.end(), a.begin(), a.end());
      }
      return key;
    }

    GroupHom inverse_map(GroupHom const& f) {
      GroupHom inv(f.size());
      for (Elt e = 0; e < f.size(); ++e) {
        inv[f[e]] = e;
      }
      return inv;
    }

    // Marks the orbit under Aut(M) x Aut(P): mu' = psi mu phi^-1 and
    // alpha'_{psi p} = phi alpha_p phi^-1.
    void mark_orbit(FinGroup const& m, FinGroup const& p, std::vector<GroupHom> const& autm,
                    std::vector<GroupHom> const& autp, GroupHom const& mu,
                    std::vector<GroupHom> const& alpha, std::set<std::vector<std::size_t>>& seen) {
      for (auto const& phi : autm) {
        GroupHom phi_inv = inverse_map(phi);
        for (auto const& psi : autp) {
          GroupHom              psi_inv = inverse_map(psi);
          GroupHom              mu2(m.order());
          std::vector<GroupHom> alpha2(p.order(), GroupHom(m.order()));
          for (Elt e = 0; e < m.order(); ++e) {
            mu2[e] = psi[mu[phi_inv[e]]];
          }
          for (Elt q = 0; q < p.order(); ++q) {
            for (Elt e = 0; e < m.order(); ++e) {
              alpha2[q][e] = phi[alpha[psi_inv[q]][phi_inv[e]]];
            }
          }
          seen.insert(encode(mu2, alpha2));
        }
      }
    }

    std::vector<CatalogXMod> build_catalog(std::size_t max_product) {
      std::vector<CatalogXMod> out;
      for (auto const& [mname, m] : small_groups()) {
        for (auto const& [pname, p] : small_groups()) {
          if (m.order() * p.order() > max_product) {
            continue;
          }
          auto                                 autm    = automorphisms(m);
          auto                                 autp    = automorphisms(p);
          auto                                 actions = right_actions(m, p);
          std::set<std::vector<std::size_t>>   seen;
          std::size_t                          count = 0;
          for (auto const& mu : homomorphisms(m, p)) {
            for (auto const& alpha : actions) {
              if (!is_crossed(m, p, mu, alpha)) {
                continue;
              }
              if (seen.count(encode(mu, alpha))) {
                continue;
              }
              mark_orbit(m, p, autm, autp, mu, alpha, seen);
              out.push_back({mname + "->" + pname + "#" + std::to_string(++count), mname, pname,
                             group_xmod(m, p, mu, alpha)});
            }
          }
        }
      }
      return out;
    }

  }  // namespace

  std::vector<CatalogXMod> const& xmod_catalog(std::size_t max_product) {
    static std::map<std::size_t, std::vector<CatalogXMod>> cache;
    auto it = cache.find(max_product);
    if (it == cache.end()) {
      it = cache.emplace(max_product, build_catalog(max_product)).first;
    }
    return it->second;
  }

}  // namespace cofib
