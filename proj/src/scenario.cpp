#include "cofib/scenario.hpp"

#include <functional>
#include <set>

namespace cofib {

  namespace {

    void check(ScenarioReport& r, std::string name, bool pass, std::string expected,
               std::string actual) {
      r.checks.push_back({std::move(name), pass, std::move(expected), std::move(actual)});
    }

    void check_count(ScenarioReport& r, std::string name, std::size_t expected, std::size_t actual) {
      check(r, std::move(name), expected == actual, std::to_string(expected), std::to_string(actual));
    }

    void check_invariants(ScenarioReport& r, std::string name, AbelianInvariants const& expected,
                          AbelianInvariants const& actual) {
      check(r, std::move(name), expected == actual, to_string(expected), to_string(actual));
    }

    // Abelianization of a group presentation from its exponent sums.
    AbelianInvariants exponent_invariants(GroupPresentation const& g) {
      IntMatrix rels;
      for (auto const& w : g.relators) {
        IntVector row(g.generators, 0);
        for (Letter l : w) {
          row[generator_of(l)] += is_inverse(l) ? -1 : 1;
        }
        rels.push_back(std::move(row));
      }
      return abelian_invariants(rels, g.generators);
    }

    ////////////////////////////////////////////////////////////////////////

    ScenarioReport circle(RewriteBound const& b) {
      ScenarioReport r;
      auto           cd = codiscrete_groupoid({"0", "1"});
      auto           u  = universal_morphism({"*"}, {0, 0}, cd);
      auto           inv = pg_abelian_invariants(u.presentation(), 0);
      check_count(r, "objects after collapsing 0 and 1", 1, u.objects().size());
      check_invariants(r, "vertex group invariants", AbelianInvariants{{}, 1}, inv);

      auto po   = pushout_along_discrete({"*"}, {0, 0}, cd, b);
      auto pinv = object_invariants(po.colimit.base);
      check_count(r, "pushout objects", 1, pinv.size());
      if (!pinv.empty()) {
        check_invariants(r, "pushout vertex group invariants", AbelianInvariants{{}, 1}, pinv[0]);
      }

      std::size_t          iota = cd.arrow_index("0>1");
      std::set<GpdWord>    distinct;
      std::vector<GpdWord> powers;
      GpdWord              p = u.identity(0);
      bool                 lengths = true;
      for (std::size_t k = 1; k <= 20; ++k) {
        p = u.compose(p, u.unit(iota));
        lengths = lengths && p.letters.size() == k;
        powers.push_back(p);
        distinct.insert(p);
      }
      check_count(r, "distinct normal forms among iota^1..iota^20", 20, distinct.size());
      check(r, "iota^k has length k", lengths, "true", lengths ? "true" : "false");

      // the same powers in the pushout presentation, by the bounded word problem
      auto   fz   = Base::finite(cd);
      PgWord word = apply(po.colimit.legs[2], fz.arrow_word(iota));
      std::vector<PgWord> pw{word};
      for (int k = 2; k <= 20; ++k) {
        pw.push_back(pg_compose(pw.back(), word));
      }
      std::size_t distinct_pairs = 0, unknown = 0;
      for (std::size_t i = 0; i < pw.size(); ++i) {
        for (std::size_t j = i + 1; j < pw.size(); ++j) {
          auto d = pg_word_problem_bounded(po.colimit.pres, pw[i], pw[j], b);
          distinct_pairs += d == Decision::Distinct;
          unknown += d == Decision::Unknown;
        }
      }
      r.unknown = unknown > 0;
      check_count(r, "pushout powers pairwise distinct (pairs)", 190, distinct_pairs);

      io::Json words = io::Json::array();
      for (auto const& w : powers) {
        words.push_back(u.to_string(w));
      }
      r.result = {{"presentation", io::to_json(u.presentation())},
                  {"invariants", io::to_json(inv)},
                  {"powers", std::move(words)}};
      return r;
    }

    ScenarioReport identify_basepoints(RewriteBound const& b) {
      ScenarioReport r;
      auto const&    c2 = library_group("C2");
      auto const&    c3 = library_group("C3");
      auto g = coproduct_gpd({group_groupoid(c2, "a"), group_groupoid(c3, "b")});
      ObjMap u{0, 0};
      auto   w   = universal_morphism({"*"}, u, g);
      auto   inv = pg_abelian_invariants(w.presentation(), 0);
      check_invariants(r, "vertex group of C2 * C3 abelianized", AbelianInvariants{{6}, 0}, inv);

      std::set<GpdWord> images;
      std::size_t       nonidentity = 0;
      bool              nonempty    = true;
      for (std::size_t a = 0; a < g.arrows.size(); ++a) {
        if (!g.is_identity(a)) {
          ++nonidentity;
          auto word = w.unit(a);
          nonempty  = nonempty && !word.letters.empty();
          images.insert(word);
        }
      }
      check(r, "unit injective on non-identity arrows",
            nonempty && images.size() == nonidentity, std::to_string(nonidentity),
            std::to_string(images.size()));

      auto battery = cocartesian_battery(g, {"*"}, u, 12);
      auto cert    = check_cocartesian(g, Base::presented(w.presentation()), w.unit_morphism(),
                                       battery);
      check(r, "unit is cocartesian against the battery", cert.pass && cert.checked > 0,
            "pass", (cert.pass ? "pass on " : "fail on ") + std::to_string(cert.checked));

      // a proper quotient of the unit is not cocartesian
      auto         fg = Base::finite(g);
      BaseMorphism collapse{u, std::vector<PgWord>(fg.pres().generators.size(), pg_identity(0))};
      auto         bad = check_cocartesian(g, Base::finite(discrete_groupoid({"*"})), collapse, battery);
      check(r, "collapse to a point is not cocartesian", !bad.pass && bad.witness.has_value(),
            "fail with witness", bad.pass ? "pass" : "fail");

      auto po   = pushout_along_discrete({"*"}, u, g, b);
      auto pinv = object_invariants(po.colimit.base);
      check(r, "pushout along the discrete map agrees", pinv.size() == 1 && pinv[0] == inv,
            to_string(inv), pinv.empty() ? "none" : to_string(pinv[0]));

      r.result = {{"presentation", io::to_json(w.presentation())},
                  {"invariants", io::to_json(inv)},
                  {"battery", battery.size()},
                  {"factorizations", cert.factorizations}};
      return r;
    }

    ScenarioReport wedge(RewriteBound const&) {
      ScenarioReport r;
      auto           cd   = codiscrete_groupoid({"0", "1"});
      auto           u    = universal_morphism({"*"}, {0, 0}, cd);
      auto           free = free_module({"b"}, {0}, Base::finite(cd));
      auto           fin  = module_simplify(free);
      check(r, "free module over the interval groupoid",
            fin == ModuleInvariants{{{}, 1}, {{}, 1}}, "Z at each object",
            fin.size() == 2 ? to_string(fin[0]) + ", " + to_string(fin[1]) : "?");

      auto induced = module_pres_induce(free, Base::presented(u.presentation()), u.unit_morphism());
      auto s       = structural_report(induced);
      check_count(r, "generators", 1, s.generators);
      check_count(r, "relations", 0, s.relations);
      check(r, "free", s.free, "true", s.free ? "true" : "false");
      check_invariants(r, "base vertex group", AbelianInvariants{{}, 1},
                       pg_abelian_invariants(induced.base.pres(), 0));
      r.result = {{"module", io::to_json(induced)}};
      return r;
    }

    ScenarioReport free_crossed_attach(RewriteBound const& b) {
      ScenarioReport r;
      auto const&    c2   = library_group("C2");
      auto           base = Base::finite(group_groupoid(c2));

      // no cells: the zero crossed module
      auto empty = free_xmod({}, base);
      auto real  = bounded_realize(empty, b);
      if (!real) {
        r.unknown = true;
      } else {
        bool zero = find_xmod_isomorphism(real->table, zero_xmod(base.table())).has_value();
        check(r, "R empty gives the zero crossed module", zero, "zero", zero ? "zero" : "nonzero");
      }

      // one cell attached along t
      PgWord t    = base.arrow_word(1);
      auto   x    = free_xmod({{"r", 0, t}}, base);
      auto   ab   = peiffer_abelianize(x);
      auto   inv  = module_simplify(ab.module);
      check_count(r, "objects of the abelianization", 1, inv.size());
      if (!inv.empty()) {
        check_invariants(r, "Peiffer abelianization at *", AbelianInvariants{{}, 1}, inv[0]);
      }
      auto e      = expand_fibre(x, 0, b);
      auto oracle = exponent_invariants(e.group);
      check_invariants(r, "SNF of the expanded fibre", AbelianInvariants{{}, 1}, oracle);

      // over the circle: a 2-cell along a^2
      auto   circle = pg_free({"*"}, {{"a", 0, 0}});
      PgWord a      = pg_generator(circle, 0);
      auto   rp2    = free_xmod({{"r", 0, pg_compose(a, a)}}, Base::presented(circle));
      auto   rab    = peiffer_abelianize(rp2);
      auto   s      = structural_report(rab.module);
      check(r, "over the circle: one free generator", s.generators == 1 && s.relations == 0,
            "1 generator, 0 relations",
            std::to_string(s.generators) + " generators, " + std::to_string(s.relations)
                + " relations");
      check_invariants(r, "cokernel groupoid over the circle", AbelianInvariants{{2}, 0},
                       pg_abelian_invariants(rab.module.base.pres(), 0));

      r.result = {{"xmod", io::to_json(x)}, {"abelianization", io::to_json(ab.module)}};
      return r;
    }

    ScenarioReport retract_free(RewriteBound const& b) {
      ScenarioReport r;

      // reconstruction over every connected catalog groupoid
      std::size_t groupoids = 0, arrows = 0, failures = 0;
      for (auto const& objs : std::vector<std::vector<std::string>>{{"a"}, {"a", "b"}, {"a", "b", "c"}}) {
        for (auto const& g : groupoid_catalog(objs, 48)) {
          if (connected_components(g).blocks.size() != 1) {
            continue;
          }
          ++groupoids;
          for (std::size_t x0 = 0; x0 < g.objects.size(); ++x0) {
            auto ret = spanning_tree_retraction(g, x0);
            for (std::size_t c = 0; c < g.arrows.size(); ++c) {
              ++arrows;
              failures += reconstruct(g, ret, c) != c;
            }
          }
        }
      }
      check(r, "reconstruction identity on connected catalog groupoids",
            failures == 0 && groupoids > 0, "0 failures",
            std::to_string(failures) + " failures in " + std::to_string(arrows) + " arrows of "
                + std::to_string(groupoids) + " groupoids");

      // free crossed module over the connected groupoid of S3 on three objects
      auto const& s3   = library_group("S3");
      auto        cg   = connected_groupoid({"a", "b", "c"}, s3);
      auto        base = Base::finite(cg);
      auto        loop = [&](std::size_t x, std::size_t k) {
        auto loops = cg.hom(x, x);
        return base.arrow_word(loops[k % loops.size()]);
      };
      std::vector<XRelatorSpec> cells{{"r0", 0, loop(0, 1)}, {"r1", 1, loop(1, 2)}, {"r2", 2, loop(2, 4)}};
      auto x = free_xmod(cells, base);
      for (std::size_t x0 = 0; x0 < 3; ++x0) {
        std::string at = cg.objects[x0];
        auto        vertex = retract_fp_to_vertex(x, x0);
        auto        before = module_simplify(peiffer_abelianize(x).module);
        auto        after  = module_simplify(peiffer_abelianize(vertex).module);
        check(r, "abelianize then restrict = restrict then abelianize at " + at,
              before.size() == 3 && after.size() == 1 && before[x0] == after[0],
              before.size() == 3 ? to_string(before[x0]) : "?",
              after.size() == 1 ? to_string(after[0]) : "?");

        // direct construction over P(x0) on the retracted boundaries
        auto                      ret = spanning_tree_retraction(cg, x0);
        auto                      vb  = Base::finite(group_groupoid(ret.vertex.group));
        std::vector<XRelatorSpec> direct_cells;
        for (auto const& c : cells) {
          direct_cells.push_back({c.id, 0, vb.arrow_word(ret.r[base.evaluate(c.word)])});
        }
        auto direct = module_simplify(peiffer_abelianize(free_xmod(direct_cells, vb)).module);
        check(r, "free on r(w) over P(" + at + ")", direct == after,
              direct.size() == 1 ? to_string(direct[0]) : "?",
              after.size() == 1 ? to_string(after[0]) : "?");
        check_count(r, "generators at " + at, cells.size(), vertex.generators.size());
      }

      // tables: the pullback of id S3 along the retraction
      auto      ret = spanning_tree_retraction(cg, 0);
      GpdMorphism to_vertex{{0, 0, 0}, ret.r};
      XModTable table = xmod_pullback(cg, to_vertex, identity_xmod(ret.vertex.group));
      auto      rt    = retract_xmod_to_vertex(table, 0);
      auto      lhs   = module_simplify(peiffer_abelianize(to_fp(table)).module);
      auto      rhs   = module_simplify(peiffer_abelianize(to_fp(rt.vertex)).module);
      check(r, "tables: retraction commutes with abelianization",
            lhs.size() == 3 && rhs.size() == 1 && lhs[0] == rhs[0],
            lhs.empty() ? "?" : to_string(lhs[0]), rhs.empty() ? "?" : to_string(rhs[0]));
      (void)b;

      r.result = {{"vertex", io::to_json(retract_fp_to_vertex(x, 0))}};
      return r;
    }

    struct Entry {
      ScenarioInfo                                     info;
      std::function<ScenarioReport(RewriteBound const&)> run;
    };

    std::vector<Entry> const& registry() {
      static std::vector<Entry> const entries{
          {{"circle", "pushout of the interval groupoid along {0,1} -> {*}: infinite cyclic"}, circle},
          {{"identify-basepoints",
            "C2 + C3 with both objects identified: the unit is cocartesian, vertex group C2 * C3"},
           identify_basepoints},
          {{"wedge-sn-s1",
            "free module on one generator over the interval, induced to the circle: free of rank one"},
           wedge},
          {{"free-crossed-attach", "free crossed modules on attached cells: zero, over C2, over the circle"},
           free_crossed_attach},
          {{"retract-free",
            "retraction of a free crossed module over a connected groupoid to a vertex group"},
           retract_free},
      };
      return entries;
    }

  }  // namespace

  std::vector<ScenarioInfo> const& scenarios() {
    static std::vector<ScenarioInfo> const infos = [] {
      std::vector<ScenarioInfo> out;
      for (auto const& e : registry()) {
        out.push_back(e.info);
      }
      return out;
    }();
    return infos;
  }

  ScenarioReport run_scenario(std::string const& name, RewriteBound const& b) {
    for (auto const& e : registry()) {
      if (e.info.name == name) {
        auto report        = e.run(b);
        report.name        = e.info.name;
        report.description = e.info.description;
        return report;
      }
    }
    throw InputError("unknown scenario \"" + name + "\"");
  }

}  // namespace cofib
