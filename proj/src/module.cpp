#include "cofib/module.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

namespace cofib {

  namespace {

    IntVector unit_vector(std::size_t n, std::size_t i) {
      IntVector e(n, 0);
      e[i] = 1;
      return e;
    }

    IntVector sub(IntVector a, IntVector const& b) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = checked_sub(a[i], b[i]);
      }
      return a;
    }

    bool has_shape(IntMatrix const& m, std::size_t rows, std::size_t cols) {
      if (m.size() != rows) {
        return false;
      }
      for (auto const& row : m) {
        if (row.size() != cols) {
          return false;
        }
      }
      return true;
    }

    std::vector<std::size_t> offsets(GpdModule const& m) {
      std::vector<std::size_t> off(m.groups.size() + 1, 0);
      for (std::size_t x = 0; x < m.groups.size(); ++x) {
        off[x + 1] = off[x] + m.groups[x].gens;
      }
      return off;
    }

  }  // namespace

  ValidationReport validate_module(GpdModule const& m) {
    ValidationReport report;
    auto const&      g = m.base;
    if (m.groups.size() != g.objects.size() || m.action.size() != g.arrows.size()) {
      report.add("module data does not match the base groupoid");
      return report;
    }
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      for (auto const& row : m.groups[x].rels) {
        if (row.size() != m.groups[x].gens) {
          report.add("relation of wrong length at " + g.objects[x]);
        }
      }
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      if (!has_shape(m.action[a], m.groups[g.src(a)].gens, m.groups[g.tgt(a)].gens)) {
        report.add("action matrix of " + g.arrows[a].id + " has the wrong shape");
      }
    }
    if (!report.ok()) {
      return report;
    }
    std::vector<RowSpace> rs;
    for (auto const& grp : m.groups) {
      rs.emplace_back(grp.rels, grp.gens);
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      std::size_t x = g.src(a), y = g.tgt(a);
      auto const& A = m.action[a];
      for (auto const& r : m.groups[x].rels) {
        if (!rs[y].contains(row_times(r, A, m.groups[y].gens))) {
          report.add("arrow " + g.arrows[a].id + " does not preserve the relations");
          break;
        }
      }
      if (g.is_identity(a)) {
        for (std::size_t i = 0; i < m.groups[x].gens; ++i) {
          if (!rs[x].contains(sub(A[i], unit_vector(m.groups[x].gens, i)))) {
            report.add("identity " + g.arrows[a].id + " acts nontrivially");
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
        std::size_t z = g.tgt(q);
        for (std::size_t i = 0; i < m.groups[g.src(p)].gens; ++i) {
          auto lhs = row_times(m.action[p][i], m.action[q], m.groups[z].gens);
          if (!rs[z].contains(sub(lhs, m.action[pq][i]))) {
            report.add("composite action fails for (" + g.arrows[p].id + "," + g.arrows[q].id
                       + ")");
            break;
          }
        }
      }
    }
    return report;
  }

  GpdModule zero_module(FinGroupoid const& base) {
    GpdModule m;
    m.base = base;
    m.groups.assign(base.objects.size(), AbPresentation{});
    m.action.assign(base.arrows.size(), IntMatrix{});
    return m;
  }

  GpdModule group_module(FinGroup const& g, AbPresentation a, std::vector<IntMatrix> action) {
    if (action.size() != g.order()) {
      throw InputError("group_module: one action matrix per element expected");
    }
    GpdModule m;
    m.base   = group_groupoid(g);
    m.groups = {std::move(a)};
    m.action = std::move(action);
    return m;
  }

  void complete_action(GpdModule& m) {
    auto const& g = m.base;
    m.action.resize(g.arrows.size());
    std::vector<bool> known(g.arrows.size(), false);
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      std::size_t rows = m.groups[g.src(a)].gens, cols = m.groups[g.tgt(a)].gens;
      if (g.is_identity(a) && m.action[a].empty()) {
        m.action[a] = identity_matrix(rows);
      }
      known[a] = has_shape(m.action[a], rows, cols) && (rows > 0 || m.action[a].empty());
      if (rows == 0) {
        m.action[a].clear();
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t p = 0; p < g.arrows.size(); ++p) {
        for (std::size_t q = 0; q < g.arrows.size() && known[p]; ++q) {
          std::size_t pq = g.mul(p, q);
          if (pq != kNone && known[q] && !known[pq]) {
            m.action[pq] = matrix_product(m.action[p], m.action[q], m.groups[g.tgt(p)].gens);
            if (m.groups[g.tgt(p)].gens == 0) {
              m.action[pq].assign(m.groups[g.src(p)].gens, IntVector(m.groups[g.tgt(q)].gens, 0));
            }
            known[pq] = changed = true;
          }
        }
      }
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      if (!known[a]) {
        throw InputError("action matrices do not determine arrow " + g.arrows[a].id);
      }
    }
  }

  GpdModule module_pullback(FinGroupoid const& g, GpdMorphism const& v, GpdModule const& n) {
    GpdModule m;
    m.base = g;
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      m.groups.push_back(n.groups.at(v.on_objects.at(x)));
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      m.action.push_back(n.action.at(v.on_arrows.at(a)));
    }
    return m;
  }

  ModuleInvariants module_invariants(GpdModule const& m) {
    ModuleInvariants out;
    for (auto const& grp : m.groups) {
      out.push_back(abelian_invariants(grp.rels, grp.gens));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentations
  ////////////////////////////////////////////////////////////////////////

  ValidationReport validate_module_pres(ModulePres const& p) {
    ValidationReport report;
    auto const&      pres = p.base.pres();
    for (auto const& g : p.generators) {
      if (g.at >= pres.objects.size()) {
        report.add("generator " + g.id + " at an unknown object");
      }
    }
    if (!report.ok()) {
      return report;
    }
    for (std::size_t r = 0; r < p.relations.size(); ++r) {
      auto const& rel = p.relations[r];
      std::string where = "relation " + std::to_string(r) + ": ";
      for (auto const& t : rel) {
        if (t.gen >= p.generators.size()) {
          report.add(where + "unknown generator");
        } else if (!well_formed(pres, t.act) || t.act.src != p.generators[t.gen].at) {
          report.add(where + "action word does not start at the generator's object");
        } else if (t.act.tgt != rel.front().act.tgt) {
          report.add(where + "terms end at different objects");
        }
      }
    }
    return report;
  }

  ModulePres to_pres(GpdModule const& m) {
    auto       off = offsets(m);
    ModulePres p;
    p.base = Base::finite(m.base);
    for (std::size_t x = 0; x < m.groups.size(); ++x) {
      for (std::size_t i = 0; i < m.groups[x].gens; ++i) {
        p.generators.push_back({m.base.objects[x] + ":" + std::to_string(i), x});
      }
      for (auto const& row : m.groups[x].rels) {
        ModRelation rel;
        for (std::size_t j = 0; j < row.size(); ++j) {
          if (row[j] != 0) {
            rel.push_back({row[j], off[x] + j, pg_identity(x)});
          }
        }
        if (!rel.empty()) {
          p.relations.push_back(std::move(rel));
        }
      }
    }
    auto const& pres = p.base.pres();
    for (std::size_t k = 0; k < pres.generators.size(); ++k) {
      std::size_t a = p.base.generator_arrow(k);
      std::size_t x = m.base.src(a), y = m.base.tgt(a);
      for (std::size_t i = 0; i < m.groups[x].gens; ++i) {
        ModRelation rel;
        for (std::size_t j = 0; j < m.groups[y].gens; ++j) {
          if (m.action[a][i][j] != 0) {
            rel.push_back({m.action[a][i][j], off[y] + j, pg_identity(y)});
          }
        }
        rel.push_back({-1, off[x] + i, pg_generator(pres, k)});
        p.relations.push_back(std::move(rel));
      }
    }
    return p;
  }

  ModulePres module_pres_induce(ModulePres const& m, Base const& target, BaseMorphism const& f) {
    if (f.on_objects.size() != m.base.pres().objects.size()) {
      throw InputError("module_pres_induce: object map has the wrong domain");
    }
    ModulePres out;
    out.base = target;
    for (auto const& g : m.generators) {
      out.generators.push_back({g.id, f.on_objects[g.at]});
    }
    for (auto const& rel : m.relations) {
      ModRelation r;
      for (auto const& t : rel) {
        r.push_back({t.coef, t.gen, apply(f, t.act)});
      }
      out.relations.push_back(std::move(r));
    }
    return out;
  }

  ModulePres module_induce(GpdMorphism const& v, FinGroupoid const& target, GpdModule const& m) {
    auto report = validate_morphism(m.base, target, v);
    if (!report.ok()) {
      throw InputError("module_induce: " + report.failures.front());
    }
    ModulePres pm = to_pres(m);
    Base       tb = Base::finite(target);
    return module_pres_induce(pm, tb, base_morphism(pm.base, tb, v));
  }

  ModulePres free_module(std::vector<std::string> const& b,
                         std::vector<std::size_t> const& t,
                         Base const&                     q) {
    if (t.size() != b.size()) {
      throw InputError("free_module: t must be defined on every element of B");
    }
    for (std::size_t x : t) {
      if (x >= q.pres().objects.size()) {
        throw InputError("free_module: t maps outside the base objects");
      }
    }
    auto      db = discrete_groupoid(b);
    GpdModule zb;
    zb.base = db;
    zb.groups.assign(b.size(), AbPresentation{1, {}});
    zb.action.assign(db.arrows.size(), identity_matrix(1));
    ModulePres pm = to_pres(zb);
    for (std::size_t i = 0; i < b.size(); ++i) {
      pm.generators[i].id = b[i];
    }
    BaseMorphism incl{t, {}};
    return module_pres_induce(pm, q, incl);
  }

  StructuralReport structural_report(ModulePres const& p) {
    return {p.generators.size(), p.relations.size(), p.relations.empty()};
  }

  ExpandedModule to_module(ModulePres const& p) {
    if (!p.base.finite()) {
      throw InfiniteBase("base is only presented; presentation has "
                         + std::to_string(p.generators.size()) + " generators and "
                         + std::to_string(p.relations.size()) + " relations");
    }
    auto report = validate_module_pres(p);
    if (!report.ok()) {
      throw InputError("module presentation: " + report.failures.front());
    }
    auto const&    t = p.base.table();
    ExpandedModule out;
    out.module.base = t;
    out.module.groups.assign(t.objects.size(), AbPresentation{});
    out.coordinate.assign(p.generators.size(), std::vector<std::size_t>(t.arrows.size(), kNone));
    for (std::size_t k = 0; k < p.generators.size(); ++k) {
      out.at.push_back(p.generators[k].at);
      for (std::size_t q = 0; q < t.arrows.size(); ++q) {
        if (t.src(q) == p.generators[k].at) {
          out.coordinate[k][q] = out.module.groups[t.tgt(q)].gens++;
        }
      }
    }
    for (auto const& rel : p.relations) {
      if (rel.empty()) {
        continue;
      }
      std::vector<std::size_t> ends;
      for (auto const& term : rel) {
        ends.push_back(p.base.evaluate(term.act));
      }
      std::size_t z = t.tgt(ends.front());
      for (std::size_t q = 0; q < t.arrows.size(); ++q) {
        if (t.src(q) != z) {
          continue;
        }
        auto&     grp = out.module.groups[t.tgt(q)];
        IntVector row(grp.gens, 0);
        for (std::size_t i = 0; i < rel.size(); ++i) {
          std::size_t c = out.coordinate[rel[i].gen][t.mul(ends[i], q)];
          row[c]        = checked_add(row[c], rel[i].coef);
        }
        if (std::any_of(row.begin(), row.end(), [](Int v) { return v != 0; })) {
          grp.rels.push_back(std::move(row));
        }
      }
    }
    for (std::size_t a = 0; a < t.arrows.size(); ++a) {
      std::size_t x = t.src(a), y = t.tgt(a);
      IntMatrix   A(out.module.groups[x].gens, IntVector(out.module.groups[y].gens, 0));
      for (std::size_t k = 0; k < p.generators.size(); ++k) {
        for (std::size_t q = 0; q < t.arrows.size(); ++q) {
          if (out.coordinate[k][q] != kNone && t.tgt(q) == x) {
            A[out.coordinate[k][q]][out.coordinate[k][t.mul(q, a)]] = 1;
          }
        }
      }
      out.module.action.push_back(std::move(A));
    }
    return out;
  }

  ModuleInvariants module_simplify(ModulePres const& p) {
    return module_invariants(to_module(p).module);
  }

  ////////////////////////////////////////////////////////////////////////
  // Oracles and morphisms
  ////////////////////////////////////////////////////////////////////////

  AbelianInvariants tensor_oracle(FinGroup const&               g,
                                  AbPresentation const&         m,
                                  std::vector<IntMatrix> const& action,
                                  FinGroup const&               h,
                                  GroupHom const&               f) {
    std::size_t n = m.gens, nh = h.order();
    if (action.size() != g.order() || f.size() != g.order()) {
      throw InputError("tensor_oracle: action and morphism must be given per element");
    }
    auto      col = [&](std::size_t i, Elt e) { return i * nh + e; };
    IntMatrix rels;
    for (auto const& r : m.rels) {
      for (Elt e = 0; e < nh; ++e) {
        IntVector row(n * nh, 0);
        for (std::size_t j = 0; j < n; ++j) {
          row[col(j, e)] = r[j];
        }
        rels.push_back(std::move(row));
      }
    }
    // m g (x) e = m (x) f(g) e
    for (Elt s = 0; s < g.order(); ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        for (Elt e = 0; e < nh; ++e) {
          IntVector row(n * nh, 0);
          for (std::size_t j = 0; j < n; ++j) {
            row[col(j, e)] = action[s][i][j];
          }
          Elt fe          = h.mul(f[s], e);
          row[col(i, fe)] = checked_sub(row[col(i, fe)], 1);
          rels.push_back(std::move(row));
        }
      }
    }
    return abelian_invariants(rels, n * nh);
  }

  ValidationReport validate_module_morphism(GpdModule const&      m,
                                            GpdModule const&      n,
                                            GpdMorphism const&    v,
                                            ModuleMorphism const& f) {
    ValidationReport report;
    auto const&      g = m.base;
    if (f.on_objects.size() != g.objects.size()) {
      report.add("morphism must give one matrix per object");
      return report;
    }
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      if (!has_shape(f.on_objects[x], m.groups[x].gens, n.groups[v.on_objects[x]].gens)) {
        report.add("matrix at " + g.objects[x] + " has the wrong shape");
      }
    }
    if (!report.ok()) {
      return report;
    }
    std::vector<RowSpace> rs;
    for (auto const& grp : n.groups) {
      rs.emplace_back(grp.rels, grp.gens);
    }
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      std::size_t vx = v.on_objects[x];
      for (auto const& r : m.groups[x].rels) {
        if (!rs[vx].contains(row_times(r, f.on_objects[x], n.groups[vx].gens))) {
          report.add("relations at " + g.objects[x] + " are not preserved");
          break;
        }
      }
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      std::size_t x = g.src(a), y = g.tgt(a), vy = v.on_objects[y];
      std::size_t cols = n.groups[vy].gens;
      for (std::size_t i = 0; i < m.groups[x].gens; ++i) {
        auto lhs = row_times(m.action[a][i], f.on_objects[y], cols);
        auto rhs = row_times(f.on_objects[x][i], n.action[v.on_arrows[a]], cols);
        if (!rs[vy].contains(sub(lhs, rhs))) {
          report.add("not equivariant along " + g.arrows[a].id);
          break;
        }
      }
    }
    return report;
  }

  void for_each_module_morphism(GpdModule const&                                  m,
                                GpdModule const&                                  n,
                                GpdMorphism const&                                v,
                                std::function<bool(ModuleMorphism const&)> const& visit) {
    auto const& g    = m.base;
    std::size_t nobj = g.objects.size();
    std::vector<std::unique_ptr<FinAbGroup>> fib;
    for (auto const& grp : n.groups) {
      fib.push_back(std::make_unique<FinAbGroup>(grp.gens, grp.rels, 4096));
    }
    std::vector<RowSpace> rs;
    for (auto const& grp : n.groups) {
      rs.emplace_back(grp.rels, grp.gens);
    }
    // Candidate generator images per object that kill the relations.
    // Generators are assigned in breadth-first order along shared relations
    // and each relation is checked once its last generator is assigned.
    std::vector<std::vector<IntMatrix>> cand(nobj);
    for (std::size_t x = 0; x < nobj; ++x) {
      std::size_t vx = v.on_objects[x], gens = m.groups[x].gens, cols = n.groups[vx].gens;
      auto const& target = *fib[vx];
      auto const& rels   = m.groups[x].rels;
      std::vector<std::vector<std::size_t>> rels_of(gens);
      for (std::size_t k = 0; k < rels.size(); ++k) {
        for (std::size_t i = 0; i < gens; ++i) {
          if (rels[k][i] != 0) {
            rels_of[i].push_back(k);
          }
        }
      }
      std::vector<std::size_t> order, position(gens, kNone);
      for (std::size_t root = 0; root < gens; ++root) {
        if (position[root] != kNone) {
          continue;
        }
        position[root] = order.size();
        order.push_back(root);
        for (std::size_t head = position[root]; head < order.size(); ++head) {
          for (std::size_t k : rels_of[order[head]]) {
            for (std::size_t i = 0; i < gens; ++i) {
              if (rels[k][i] != 0 && position[i] == kNone) {
                position[i] = order.size();
                order.push_back(i);
              }
            }
          }
        }
      }
      std::vector<std::vector<IntVector const*>> due(gens + 1);
      for (auto const& r : rels) {
        std::size_t last = 0;
        for (std::size_t i = 0; i < gens; ++i) {
          if (r[i] != 0) {
            last = std::max(last, position[i] + 1);
          }
        }
        due[last].push_back(&r);
      }
      IntMatrix mat(gens, IntVector(cols, 0));
      std::function<void(std::size_t)> pick = [&](std::size_t i) {
        if (i == gens) {
          cand[x].push_back(mat);
          return;
        }
        std::size_t gen = order[i];
        for (std::size_t e = 0; e < target.order(); ++e) {
          mat[gen] = target.element(e);
          bool ok  = true;
          for (auto const* r : due[i + 1]) {
            if (!rs[vx].contains(row_times(*r, mat, cols))) {
              ok = false;
              break;
            }
          }
          if (ok) {
            pick(i + 1);
          }
        }
        mat[gen] = IntVector(cols, 0);
      };
      pick(0);  // due[0] holds only zero relations
    }
    auto gens = groupoid_generators(g).gens;
    ModuleMorphism cur;
    cur.on_objects.assign(nobj, IntMatrix{});
    std::function<bool(std::size_t)> rec = [&](std::size_t x) -> bool {
      if (x == nobj) {
        return visit(cur);
      }
      for (auto const& c : cand[x]) {
        cur.on_objects[x] = c;
        bool ok           = true;
        for (std::size_t a : gens) {
          std::size_t s = g.src(a), t = g.tgt(a);
          if (std::max(s, t) != x) {
            continue;
          }
          std::size_t vt = v.on_objects[t], cols = n.groups[vt].gens;
          for (std::size_t i = 0; i < m.groups[s].gens && ok; ++i) {
            auto lhs = row_times(m.action[a][i], cur.on_objects[t], cols);
            auto rhs = row_times(cur.on_objects[s][i], n.action[v.on_arrows[a]], cols);
            ok       = rs[vt].contains(sub(lhs, rhs));
          }
          if (!ok) {
            break;
          }
        }
        if (ok && !rec(x + 1)) {
          return false;
        }
      }
      return true;
    };
    rec(0);
  }

  bool same_module_morphism(GpdModule const& n, GpdMorphism const& v, ModuleMorphism const& f,
                            ModuleMorphism const& g) {
    for (std::size_t x = 0; x < f.on_objects.size(); ++x) {
      std::size_t vx = v.on_objects[x];
      RowSpace    rs(n.groups[vx].rels, n.groups[vx].gens);
      for (std::size_t i = 0; i < f.on_objects[x].size(); ++i) {
        if (!rs.contains(sub(f.on_objects[x][i], g.on_objects[x][i]))) {
          return false;
        }
      }
    }
    return true;
  }

  ModuleMorphism compose(ModuleMorphism const& f, GpdMorphism const& v, ModuleMorphism const& g,
                         GpdMorphism const& w, GpdModule const& l) {
    ModuleMorphism out;
    for (std::size_t x = 0; x < f.on_objects.size(); ++x) {
      std::size_t vx   = v.on_objects[x];
      auto const& G    = g.on_objects.at(vx);
      std::size_t cols = l.groups.at(w.on_objects.at(vx)).gens;
      IntMatrix   prod(f.on_objects[x].size(), IntVector(cols, 0));
      for (std::size_t i = 0; i < prod.size(); ++i) {
        prod[i] = row_times(f.on_objects[x][i], G, cols);
      }
      out.on_objects.push_back(std::move(prod));
    }
    return out;
  }

  ModuleMorphism induce_unit(GpdModule const& m, ExpandedModule const& induced) {
    auto const&    t   = induced.module.base;
    auto           off = offsets(m);
    ModuleMorphism out;
    for (std::size_t x = 0; x < m.groups.size(); ++x) {
      IntMatrix mat;
      for (std::size_t i = 0; i < m.groups[x].gens; ++i) {
        std::size_t k  = off[x] + i;
        std::size_t vx = induced.at[k];
        mat.push_back(unit_vector(induced.module.groups[vx].gens,
                                  induced.coordinate[k][t.identity[vx]]));
      }
      out.on_objects.push_back(std::move(mat));
    }
    return out;
  }

}  // namespace cofib
