#include "cofib/colimit.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace cofib {

  namespace {

    struct UnionFind {
      std::vector<std::size_t> parent;
      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      std::size_t find(std::size_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      }
      void unite(std::size_t a, std::size_t b) {
        parent[find(a)] = find(b);
      }
    };

    PgWord shifted(PgWord const& w, std::size_t offset, ObjMap const& objects) {
      PgWord out{objects[w.src], objects[w.tgt], {}};
      for (Letter l : w.letters) {
        out.letters.push_back(letter(generator_of(l) + offset, is_inverse(l)));
      }
      return out;
    }

    ObjMap identity_objects(std::size_t n) {
      ObjMap out(n);
      std::iota(out.begin(), out.end(), 0);
      return out;
    }

    // Generator k of `from` identified with its image under f in `to`.
    void add_edge_relators(PresentedGroupoid& pres, Base const& from, std::size_t from_offset,
                           ObjMap const& from_objects, Base const& to, std::size_t to_offset,
                           ObjMap const& to_objects, GpdMorphism const& f) {
      for (std::size_t k = 0; k < from.pres().generators.size(); ++k) {
        std::size_t a   = from.generator_arrow(k);
        PgWord      gen = shifted(pg_generator(from.pres(), k), from_offset, from_objects);
        PgWord      img = shifted(to.arrow_word(f.on_arrows[a]), to_offset, to_objects);
        PgWord      rel = pg_compose(gen, pg_inverse(img));
        rel.letters     = free_reduce(rel.letters);
        if (!rel.letters.empty()) {
          pres.relators.push_back(std::move(rel));
        }
      }
    }

    // Generating sets and their offsets, in the order used by to_fp.
    struct FpLayout {
      std::vector<std::vector<Elt>>       gens;
      std::vector<std::vector<GroupWord>> words;
      std::vector<std::size_t>            offset;
      std::vector<std::vector<std::size_t>> index;  // object, element -> position or kNone
    };

    FpLayout fp_layout(XModTable const& m) {
      FpLayout    l;
      std::size_t total = 0;
      for (auto const& f : m.fibres) {
        l.gens.push_back(generating_set(f));
        l.words.push_back(cayley_words(f, l.gens.back()));
        l.offset.push_back(total);
        std::vector<std::size_t> idx(f.order(), kNone);
        for (std::size_t i = 0; i < l.gens.back().size(); ++i) {
          idx[l.gens.back()[i]] = i;
        }
        l.index.push_back(std::move(idx));
        total += l.gens.back().size();
      }
      return l;
    }

    std::vector<std::size_t> module_offsets(GpdModule const& m) {
      std::vector<std::size_t> off;
      std::size_t              total = 0;
      for (auto const& g : m.groups) {
        off.push_back(total);
        total += g.gens;
      }
      return off;
    }

  }  // namespace

  ShapeComponents shape_components(Shape const& s) {
    UnionFind uf(s.nodes);
    for (auto [a, b] : s.edges) {
      uf.unite(a, b);
    }
    ShapeComponents          out;
    std::map<std::size_t, std::size_t> label;
    for (std::size_t v = 0; v < s.nodes; ++v) {
      auto [it, fresh] = label.emplace(uf.find(v), label.size());
      out.of.push_back(it->second);
    }
    out.count = label.size();
    return out;
  }

  Shape shape_of(GpdDiagram const& d) {
    Shape s;
    s.nodes = d.nodes.size();
    for (auto const& e : d.edges) {
      s.edges.emplace_back(e.src, e.tgt);
    }
    return s;
  }

  GpdDiagram base_diagram(ModDiagram const& d) {
    GpdDiagram out;
    out.names = d.names;
    for (auto const& m : d.nodes) {
      out.nodes.push_back(m.base);
    }
    for (auto const& e : d.edges) {
      out.edges.push_back({e.src, e.tgt, e.base});
    }
    return out;
  }

  GpdDiagram base_diagram(XModDiagram const& d) {
    GpdDiagram out;
    out.names = d.names;
    for (auto const& m : d.nodes) {
      out.nodes.push_back(m.base);
    }
    for (auto const& e : d.edges) {
      out.edges.push_back({e.src, e.tgt, e.base});
    }
    return out;
  }

  ValidationReport validate_diagram(GpdDiagram const& d) {
    ValidationReport report;
    if (d.nodes.empty()) {
      report.add("diagram has no nodes");
    }
    if (d.names.size() != d.nodes.size()) {
      report.add("diagram needs one name per node");
    }
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
      auto const& e = d.edges[i];
      if (e.src >= d.nodes.size() || e.tgt >= d.nodes.size()) {
        report.add("edge " + std::to_string(i) + " has an unknown endpoint");
        continue;
      }
      auto r = validate_morphism(d.nodes[e.src], d.nodes[e.tgt], e.map);
      for (auto const& f : r.failures) {
        report.add("edge " + std::to_string(i) + ": " + f);
      }
    }
    return report;
  }

  ValidationReport validate_diagram(ModDiagram const& d) {
    auto report = validate_diagram(base_diagram(d));
    if (!report.ok()) {
      return report;
    }
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
      auto r = validate_module(d.nodes[i]);
      for (auto const& f : r.failures) {
        report.add("node " + d.names[i] + ": " + f);
      }
    }
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
      auto const& e = d.edges[i];
      auto        r = validate_module_morphism(d.nodes[e.src], d.nodes[e.tgt], e.base, e.map);
      for (auto const& f : r.failures) {
        report.add("edge " + std::to_string(i) + ": " + f);
      }
    }
    return report;
  }

  ValidationReport validate_diagram(XModDiagram const& d) {
    auto report = validate_diagram(base_diagram(d));
    if (!report.ok()) {
      return report;
    }
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
      auto r = validate_xmod(d.nodes[i]);
      for (auto const& f : r.failures) {
        report.add("node " + d.names[i] + ": " + f);
      }
    }
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
      auto const& e = d.edges[i];
      auto        r = validate_xmod_morphism(d.nodes[e.src], d.nodes[e.tgt], e.base, e.map);
      for (auto const& f : r.failures) {
        report.add("edge " + std::to_string(i) + ": " + f);
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Groupoids
  ////////////////////////////////////////////////////////////////////////

  GpdColimit colimit_gpd(GpdDiagram const& d, RewriteBound const& b) {
    auto report = validate_diagram(d);
    if (!report.ok()) {
      throw InputError("colimit: " + report.failures.front());
    }
    if (!shape_components(shape_of(d)).connected()) {
      throw InputError(
          "colimit: the diagram is not connected; a coproduct in a fibre is not the coproduct "
          "of groupoids");
    }
    std::size_t              n = d.nodes.size();
    GpdColimit               out;

    // (i) objects: union-find over the disjoint union
    std::vector<std::size_t> node_offset;
    std::size_t              total = 0;
    for (auto const& g : d.nodes) {
      node_offset.push_back(total);
      total += g.objects.size();
    }
    UnionFind uf(total);
    for (auto const& e : d.edges) {
      for (std::size_t x = 0; x < d.nodes[e.src].objects.size(); ++x) {
        uf.unite(node_offset[e.src] + x, node_offset[e.tgt] + e.map.on_objects[x]);
      }
    }
    // least member by (object name, node index)
    std::map<std::size_t, std::pair<std::string, std::size_t>> least;
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t x = 0; x < d.nodes[c].objects.size(); ++x) {
        auto key        = std::make_pair(d.nodes[c].objects[x], c);
        auto [it, ins]  = least.emplace(uf.find(node_offset[c] + x), key);
        if (!ins && key < it->second) {
          it->second = key;
        }
      }
    }
    std::vector<std::tuple<std::string, std::size_t, std::size_t>> classes;  // name, node, root
    for (auto const& [root, key] : least) {
      classes.emplace_back(key.first, key.second, root);
    }
    std::sort(classes.begin(), classes.end());
    std::map<std::string, std::size_t> name_count;
    for (auto const& c : classes) {
      ++name_count[std::get<0>(c)];
    }
    std::map<std::size_t, std::size_t> class_index;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      auto const& [name, node, root] = classes[i];
      out.objects.push_back(name_count[name] > 1 ? d.names[node] + "." + name : name);
      class_index[root] = i;
    }
    for (std::size_t c = 0; c < n; ++c) {
      ObjMap leg;
      for (std::size_t x = 0; x < d.nodes[c].objects.size(); ++x) {
        leg.push_back(class_index.at(uf.find(node_offset[c] + x)));
      }
      out.object_legs.push_back(std::move(leg));
    }

    // (ii) cocartesian liftings U_{u_c}(T c) and their fibre coproduct over I
    std::vector<Base> finite;
    out.pres.objects = out.objects;
    for (std::size_t c = 0; c < n; ++c) {
      finite.push_back(Base::finite(d.nodes[c]));
      auto        u    = universal_morphism(out.objects, out.object_legs[c], d.nodes[c]);
      auto const& up   = u.presentation();
      std::size_t off  = out.pres.generators.size();
      out.generator_offset.push_back(off);
      for (auto const& g : up.generators) {
        out.pres.generators.push_back({d.names[c] + "." + g.id, g.src, g.tgt});
      }
      auto ids = identity_objects(out.objects.size());
      for (auto const& r : up.relators) {
        out.pres.relators.push_back(shifted(r, off, ids));
      }
      // the unit followed by the coproduct inclusion
      BaseMorphism leg{u.unit_morphism().on_objects, {}};
      for (std::size_t k = 0; k < up.generators.size(); ++k) {
        leg.on_generators.push_back(shifted(pg_generator(up, k), off, ids));
      }
      out.legs.push_back(std::move(leg));
    }

    // (iii) induced vertical morphisms; functoriality on composable edges
    std::vector<BaseMorphism> vertical;
    for (auto const& e : d.edges) {
      vertical.push_back(base_morphism(finite[e.src], finite[e.tgt], e.map));
    }
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
      auto const& e = d.edges[i];
      if (e.src == e.tgt && e.map == identity_morphism(d.nodes[e.src])) {
        for (std::size_t k = 0; k < vertical[i].on_generators.size(); ++k) {
          if (finite[e.src].evaluate(vertical[i].on_generators[k])
              != finite[e.src].generator_arrow(k)) {
            out.functoriality.add("identity edge " + std::to_string(i) + " is not sent to 1");
            break;
          }
        }
      }
      for (std::size_t j = 0; j < d.edges.size(); ++j) {
        if (d.edges[j].src != e.tgt) {
          continue;
        }
        auto composite = compose_morphisms(e.map, d.edges[j].map);
        for (std::size_t k3 = 0; k3 < d.edges.size(); ++k3) {
          auto const& e3 = d.edges[k3];
          if (e3.src != e.src || e3.tgt != d.edges[j].tgt || !(e3.map == composite)) {
            continue;
          }
          auto        xx = compose(vertical[i], vertical[j]);
          auto const& tb = finite[e3.tgt];
          for (std::size_t k = 0; k < xx.on_generators.size(); ++k) {
            if (tb.evaluate(xx.on_generators[k]) != tb.evaluate(vertical[k3].on_generators[k])) {
              out.functoriality.add("edges " + std::to_string(i) + ", " + std::to_string(j)
                                    + " do not compose to edge " + std::to_string(k3));
              break;
            }
          }
        }
      }
    }

    // (iv) edge relators
    for (auto const& e : d.edges) {
      add_edge_relators(out.pres, finite[e.src], out.generator_offset[e.src],
                        out.object_legs[e.src], finite[e.tgt], out.generator_offset[e.tgt],
                        out.object_legs[e.tgt], e.map);
    }

    if (auto r = pg_realize(out.pres, b)) {
      out.base = Base::realized(out.pres, *r);
      for (std::size_t c = 0; c < n; ++c) {
        GpdMorphism f;
        f.on_objects = out.object_legs[c];
        for (std::size_t a = 0; a < d.nodes[c].arrows.size(); ++a) {
          f.on_arrows.push_back(out.base.evaluate(apply(out.legs[c], finite[c].arrow_word(a))));
        }
        out.finite_legs.push_back(std::move(f));
      }
    } else {
      out.base = Base::presented(out.pres);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Modules and crossed modules
  ////////////////////////////////////////////////////////////////////////

  ModColimit colimit_mod(ModDiagram const& d, RewriteBound const& b) {
    auto report = validate_diagram(d);
    if (!report.ok()) {
      throw InputError("colimit: " + report.failures.front());
    }
    ModColimit out;
    out.base        = colimit_gpd(base_diagram(d), b);
    out.module.base = out.base.base;
    std::vector<std::vector<std::size_t>> local;
    for (std::size_t c = 0; c < d.nodes.size(); ++c) {
      auto induced =
          module_pres_induce(to_pres(d.nodes[c]), out.base.base, out.base.legs[c]);
      std::size_t off = out.module.generators.size();
      out.generator_offset.push_back(off);
      local.push_back(module_offsets(d.nodes[c]));
      for (auto g : induced.generators) {
        g.id = d.names[c] + "." + g.id;
        out.module.generators.push_back(std::move(g));
      }
      for (auto rel : induced.relations) {
        for (auto& t : rel) {
          t.gen += off;
        }
        out.module.relations.push_back(std::move(rel));
      }
    }
    for (auto const& e : d.edges) {
      auto const& m = d.nodes[e.src];
      for (std::size_t x = 0; x < m.groups.size(); ++x) {
        std::size_t fx  = e.base.on_objects[x];
        std::size_t obj = out.base.object_legs[e.src][x];
        for (std::size_t i = 0; i < m.groups[x].gens; ++i) {
          ModRelation rel{{1, out.generator_offset[e.src] + local[e.src][x] + i, pg_identity(obj)}};
          auto const& row = e.map.on_objects[x][i];
          for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] != 0) {
              rel.push_back({-row[j], out.generator_offset[e.tgt] + local[e.tgt][fx] + j,
                             pg_identity(obj)});
            }
          }
          out.module.relations.push_back(std::move(rel));
        }
      }
    }
    return out;
  }

  XModColimit colimit_xmod(XModDiagram const& d, RewriteBound const& b) {
    auto report = validate_diagram(d);
    if (!report.ok()) {
      throw InputError("colimit: " + report.failures.front());
    }
    XModColimit out;
    out.base      = colimit_gpd(base_diagram(d), b);
    out.xmod.base = out.base.base;
    std::vector<FpLayout> layout;
    for (std::size_t c = 0; c < d.nodes.size(); ++c) {
      auto        induced = fp_xmod_induce(to_fp(d.nodes[c]), out.base.base, out.base.legs[c]);
      std::size_t off     = out.xmod.generators.size();
      out.generator_offset.push_back(off);
      layout.push_back(fp_layout(d.nodes[c]));
      for (auto g : induced.generators) {
        g.id = d.names[c] + "." + g.id;
        out.xmod.generators.push_back(std::move(g));
      }
      for (auto rel : induced.relators) {
        for (auto& l : rel) {
          l.gen += off;
        }
        out.xmod.relators.push_back(std::move(rel));
      }
    }
    for (auto const& e : d.edges) {
      auto const& m  = d.nodes[e.src];
      auto const& ls = layout[e.src];
      auto const& lt = layout[e.tgt];
      for (std::size_t x = 0; x < m.fibres.size(); ++x) {
        std::size_t fx  = e.base.on_objects[x];
        std::size_t obj = out.base.object_legs[e.src][x];
        for (std::size_t i = 0; i < ls.gens[x].size(); ++i) {
          XRelator    rel{{out.generator_offset[e.src] + ls.offset[x] + i, pg_identity(obj), false}};
          auto const& w = lt.words[fx][e.map.on_objects[x][ls.gens[x][i]]];
          for (auto it = w.rbegin(); it != w.rend(); ++it) {
            rel.push_back({out.generator_offset[e.tgt] + lt.offset[fx] + generator_of(*it),
                           pg_identity(obj), !is_inverse(*it)});
          }
          out.xmod.relators.push_back(std::move(rel));
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Cocartesian morphisms and pushouts
  ////////////////////////////////////////////////////////////////////////

  CocartesianCert check_cocartesian(FinGroupoid const& z, Base const& y, BaseMorphism const& psi,
                                    std::vector<BatteryItem> const& battery) {
    Base            fz = Base::finite(z);
    auto const&     yp = y.pres();
    CocartesianCert cert;
    auto            ids = identity_objects(yp.objects.size());
    for (std::size_t i = 0; i < battery.size(); ++i) {
      auto const& item = battery[i];
      if (item.target.objects.size() != yp.objects.size() || item.theta.on_objects != psi.on_objects
          || !validate_morphism(z, item.target, item.theta).ok()) {
        throw InputError("check_cocartesian: battery item " + std::to_string(i)
                         + " is not a morphism over the base map");
      }
      std::size_t count = 0;
      for_each_pg_morphism(yp, item.target, ids, [&](std::vector<std::size_t> const& images) {
        for (std::size_t k = 0; k < fz.pres().generators.size(); ++k) {
          if (evaluate_in(item.target, ids, images, psi.on_generators[k])
              != item.theta.on_arrows[fz.generator_arrow(k)]) {
            return true;
          }
        }
        return ++count < 2;
      });
      cert.factorizations.push_back(count);
      ++cert.checked;
      if (count != 1 && cert.pass) {
        cert.pass    = false;
        cert.witness = i;
      }
    }
    return cert;
  }

  std::vector<BatteryItem> cocartesian_battery(FinGroupoid const&              z,
                                               std::vector<std::string> const& j,
                                               ObjMap const& v, std::size_t max_arrows) {
    std::vector<BatteryItem> out;
    for (auto const& x : groupoid_catalog(j, max_arrows)) {
      for (auto const& theta : morphisms_over(z, x, v)) {
        out.push_back({x, theta});
      }
    }
    return out;
  }

  namespace {

    GpdMorphism discrete_map(FinGroupoid const& from, FinGroupoid const& to, ObjMap const& u) {
      GpdMorphism f{u, {}};
      for (std::size_t a = 0; a < from.arrows.size(); ++a) {
        f.on_arrows.push_back(to.identity[u[from.src(a)]]);
      }
      return f;
    }

  }  // namespace

  GpdDiagram discrete_span(std::vector<std::string> const& j, ObjMap const& u,
                           FinGroupoid const& z) {
    if (u.size() != z.objects.size()) {
      throw InputError("discrete_span: object map has the wrong domain");
    }
    for (std::size_t x : u) {
      if (x >= j.size()) {
        throw InputError("discrete_span: object map leaves the target set");
      }
    }
    auto       dk = discrete_groupoid(z.objects);
    auto       dj = discrete_groupoid(j);
    GpdDiagram d;
    d.names = {"DK", "DJ", "Z"};
    d.nodes = {dk, dj, z};
    d.edges = {{0, 1, discrete_map(dk, dj, u)},
               {0, 2, discrete_map(dk, z, identity_objects(z.objects.size()))}};
    return d;
  }

  ModDiagram discrete_span(std::vector<std::string> const& j, ObjMap const& u,
                           GpdModule const& z) {
    auto       g = discrete_span(j, u, z.base);
    ModDiagram d;
    d.names = g.names;
    d.nodes = {zero_module(g.nodes[0]), zero_module(g.nodes[1]), z};
    ModuleMorphism zero{std::vector<IntMatrix>(g.nodes[0].objects.size())};
    d.edges = {{0, 1, g.edges[0].map, zero}, {0, 2, g.edges[1].map, zero}};
    return d;
  }

  XModDiagram discrete_span(std::vector<std::string> const& j, ObjMap const& u,
                            XModTable const& z) {
    auto        g = discrete_span(j, u, z.base);
    XModDiagram d;
    d.names = g.names;
    d.nodes = {zero_xmod(g.nodes[0]), zero_xmod(g.nodes[1]), z};
    XModMorphism to_j, to_z;
    for (std::size_t x = 0; x < g.nodes[0].objects.size(); ++x) {
      to_j.on_objects.push_back({0});
      to_z.on_objects.push_back({z.fibres[x].identity()});
    }
    d.edges = {{0, 1, g.edges[0].map, to_j}, {0, 2, g.edges[1].map, to_z}};
    return d;
  }

  GpdPushout pushout_along_discrete(std::vector<std::string> const& j, ObjMap const& u,
                                    FinGroupoid const& z, RewriteBound const& b) {
    GpdPushout out{colimit_gpd(discrete_span(j, u, z), b), {}};
    out.to_j.assign(out.colimit.objects.size(), kNone);
    for (std::size_t x = 0; x < j.size(); ++x) {
      out.to_j[out.colimit.object_legs[1][x]] = x;
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Invariants
  ////////////////////////////////////////////////////////////////////////

  std::vector<AbelianInvariants> module_coinvariants(ModulePres const& p) {
    auto const& pres = p.base.pres();
    UnionFind   uf(pres.objects.size());
    for (auto const& g : pres.generators) {
      uf.unite(g.src, g.tgt);
    }
    std::map<std::size_t, std::size_t> comp;  // root -> index
    for (std::size_t x = 0; x < pres.objects.size(); ++x) {
      comp.emplace(uf.find(x), comp.size());
    }
    std::vector<std::vector<std::size_t>> gens(comp.size());
    std::vector<std::size_t>              pos(p.generators.size());
    for (std::size_t k = 0; k < p.generators.size(); ++k) {
      auto& list = gens[comp.at(uf.find(p.generators[k].at))];
      pos[k]     = list.size();
      list.push_back(k);
    }
    std::vector<IntMatrix> rels(comp.size());
    for (auto const& rel : p.relations) {
      if (rel.empty()) {
        continue;
      }
      std::size_t c = comp.at(uf.find(p.generators[rel.front().gen].at));
      IntVector   row(gens[c].size(), 0);
      for (auto const& t : rel) {
        row[pos[t.gen]] = checked_add(row[pos[t.gen]], t.coef);
      }
      rels[c].push_back(std::move(row));
    }
    std::vector<AbelianInvariants> per_comp;
    for (std::size_t c = 0; c < comp.size(); ++c) {
      per_comp.push_back(abelian_invariants(rels[c], gens[c].size()));
    }
    std::vector<AbelianInvariants> out;
    for (std::size_t x = 0; x < pres.objects.size(); ++x) {
      out.push_back(per_comp[comp.at(uf.find(x))]);
    }
    return out;
  }

  std::vector<AbelianInvariants> object_invariants(Base const& b) {
    std::vector<AbelianInvariants> out;
    for (std::size_t x = 0; x < b.pres().objects.size(); ++x) {
      out.push_back(pg_abelian_invariants(b.pres(), x));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Fibre against total colimits
  ////////////////////////////////////////////////////////////////////////

  FibreTotalReport fibre_vs_total(GpdDiagram const& d, RewriteBound const& b) {
    auto report = validate_diagram(d);
    if (!report.ok()) {
      throw InputError("fibre_vs_total: " + report.failures.front());
    }
    auto const& objects = d.nodes.front().objects;
    auto        ids     = identity_objects(objects.size());
    for (auto const& g : d.nodes) {
      if (g.objects != objects) {
        throw InputError("fibre_vs_total: nodes lie over different object sets");
      }
    }
    for (auto const& e : d.edges) {
      if (e.map.on_objects != ids) {
        throw InputError("fibre_vs_total: an edge is not vertical");
      }
    }
    FibreTotalReport out;

    // colimit inside the fibre: free product over the objects, then edges
    PresentedGroupoid fibre;
    fibre.objects = objects;
    std::vector<Base>        finite;
    std::vector<std::size_t> offset;
    for (std::size_t c = 0; c < d.nodes.size(); ++c) {
      finite.push_back(Base::finite(d.nodes[c]));
      offset.push_back(fibre.generators.size());
      for (auto const& g : finite.back().pres().generators) {
        fibre.generators.push_back({d.names[c] + "." + g.id, g.src, g.tgt});
      }
      for (auto const& r : finite.back().pres().relators) {
        fibre.relators.push_back(shifted(r, offset.back(), ids));
      }
    }
    for (auto const& e : d.edges) {
      add_edge_relators(fibre, finite[e.src], offset[e.src], ids, finite[e.tgt], offset[e.tgt],
                        ids, e.map);
    }
    auto fibre_real      = pg_realize(fibre, b);
    out.fibre_objects    = objects.size();
    out.fibre_invariants = object_invariants(Base::presented(fibre));
    if (fibre_real) {
      out.fibre_arrows = fibre_real->groupoid.arrows.size();
    }

    out.connected = shape_components(shape_of(d)).connected();
    if (out.connected) {
      auto total           = colimit_gpd(d, b);
      out.total_objects    = total.objects.size();
      out.total_invariants = object_invariants(total.base);
      if (total.base.finite()) {
        out.total_arrows = total.base.table().arrows.size();
      }
      // vertical edges identify each object only with itself
      bool same_objects = total.objects == objects;
      if (fibre_real && total.base.finite()) {
        out.agree = same_objects
                    && find_groupoid_isomorphism(fibre_real->groupoid, total.base.table())
                           .has_value();
        out.detail = out.agree ? "isomorphic finite colimits" : "finite colimits differ";
      } else {
        out.agree = same_objects && !fibre_real && !total.base.finite()
                    && out.fibre_invariants == out.total_invariants;
        out.detail = out.agree ? "presented colimits with equal invariants"
                               : "presented colimits differ";
      }
    } else {
      auto total           = coproduct_gpd(d.nodes);
      out.total_objects    = total.objects.size();
      out.total_arrows     = total.arrows.size();
      out.total_invariants = object_invariants(Base::finite(total));
      out.agree = out.fibre_objects == out.total_objects && out.fibre_arrows == out.total_arrows
                  && out.fibre_invariants == out.total_invariants;
      out.detail = "fibre coproduct has " + std::to_string(out.fibre_objects) + " objects and "
                   + (out.fibre_arrows ? std::to_string(*out.fibre_arrows) : "infinitely many")
                   + " arrows; coproduct of groupoids has " + std::to_string(out.total_objects)
                   + " objects and " + std::to_string(*out.total_arrows) + " arrows";
    }
    return out;
  }

}  // namespace cofib
