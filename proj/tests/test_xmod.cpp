#include <random>

#include "cofib/xmod.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cofib;
using namespace cofib::testing;

namespace {

  std::vector<GroupHom> trivial_action(FinGroup const& m, FinGroup const& p) {
    GroupHom id(m.order());
    std::iota(id.begin(), id.end(), 0);
    return std::vector<GroupHom>(p.order(), id);
  }

  std::vector<CatalogXMod> const& catalog() {
    return xmod_catalog(64);
  }

  std::vector<CatalogXMod const*> catalog_over(std::string const& p) {
    std::vector<CatalogXMod const*> out;
    for (auto const& c : catalog()) {
      if (c.p_name == p) {
        out.push_back(&c);
      }
    }
    return out;
  }

  std::size_t catalog_count(std::string const& m, std::string const& p) {
    std::size_t n = 0;
    for (auto const& c : catalog()) {
      n += c.m_name == m && c.p_name == p;
    }
    return n;
  }

  RealizedXMod realize(FpXMod const& x) {
    auto r = bounded_realize(x, RewriteBound{});
    REQUIRE(r.has_value());
    return *r;
  }

  // The connected groupoid on objects a, b with vertex group G, collapsed
  // onto G.
  GpdMorphism collapse(FinGroupoid const& g, FinGroup const& grp) {
    GpdMorphism f;
    f.on_objects.assign(g.objects.size(), 0);
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      f.on_arrows.push_back(a % grp.order());
    }
    return f;
  }

  // Abelianization of the expanded fibre, computed directly from its relators.
  AbelianInvariants expanded_abelianization(ExpandedFibre const& e) {
    IntMatrix rels;
    for (auto const& r : e.group.relators) {
      IntVector row(e.group.generators, 0);
      for (Letter l : r) {
        row[generator_of(l)] += is_inverse(l) ? -1 : 1;
      }
      rels.push_back(std::move(row));
    }
    return abelian_invariants(rels, e.group.generators);
  }

  PgWord random_loop(std::mt19937& rng, Base const& b, std::size_t x) {
    auto const& t     = b.table();
    auto        loops = t.hom(x, x);
    return b.arrow_word(loops[rng() % loops.size()]);
  }

}  // namespace

TEST_CASE("validation of crossed modules") {
  auto c2 = library_group("C2");
  auto s3 = library_group("S3");
  CHECK(validate_xmod(identity_xmod(c2)).ok());
  CHECK(validate_xmod(identity_xmod(s3)).ok());
  CHECK(validate_xmod(zero_xmod(codiscrete_groupoid({"a", "b"}))).ok());

  GroupHom id(s3.order());
  std::iota(id.begin(), id.end(), 0);
  auto bad    = group_xmod(s3, s3, id, trivial_action(s3, s3));
  auto report = validate_xmod(bad);
  CHECK_FALSE(report.ok());
  bool cm1 = false, cm2 = false;
  for (auto const& f : report.failures) {
    cm1 = cm1 || f.rfind("CM1", 0) == 0;
    cm2 = cm2 || f.rfind("CM2", 0) == 0;
  }
  CHECK(cm1);
  CHECK(cm2);

  // boundary not a homomorphism
  auto c3   = library_group("C3");
  auto none = group_xmod(c3, c3, GroupHom{0, 1, 1}, trivial_action(c3, c3));
  CHECK_FALSE(validate_xmod(none).ok());
}

TEST_CASE("catalog") {
  for (auto const& c : catalog()) {
    INFO(c.name);
    CHECK(validate_xmod(c.xmod).ok());
  }
  // Aut(C2) is trivial: mu is 0 or the identity.
  CHECK(catalog_count("C2", "C2") == 2);
  // mu = 0 and C2 acts on C3 trivially or by inversion.
  CHECK(catalog_count("C3", "C2") == 2);
  // no nontrivial hom C2 -> C3 and no nontrivial action of C3 on C2.
  CHECK(catalog_count("C2", "C3") == 1);
  CHECK(catalog_count("C1", "C1") == 1);
  // mu = 0 or one of three injections, permuted transitively by Aut(C2xC2).
  CHECK(catalog_count("C2", "C2xC2") == 2);
  // no two entries are isomorphic over the identity base
  for (std::size_t i = 0; i < catalog().size(); ++i) {
    for (std::size_t j = i + 1; j < catalog().size(); ++j) {
      auto const& a = catalog()[i];
      auto const& b = catalog()[j];
      if (a.m_name == b.m_name && a.p_name == b.p_name) {
        auto autp = automorphisms(library_group(a.p_name));
        for (auto const& psi : autp) {
          // transport b along psi and look for an isomorphism over the identity
          XModTable moved = b.xmod;
          for (auto& v : moved.mu[0]) {
            GroupHom inv(psi.size());
            for (Elt e = 0; e < psi.size(); ++e) {
              inv[psi[e]] = e;
            }
            v = inv[v];
          }
          for (Elt q = 0; q < psi.size(); ++q) {
            moved.action[q] = b.xmod.action[psi[q]];
          }
          REQUIRE(validate_xmod(moved).ok());
          CHECK_FALSE(find_xmod_isomorphism(a.xmod, moved).has_value());
        }
      }
    }
  }
}

TEST_CASE("pullback") {
  std::mt19937 rng(11);
  SUBCASE("identity crossed module pulled back is the identity crossed module") {
    auto g = library_group("S3");
    auto h = library_group("C2");
    for (auto const& f : homomorphisms(h, g)) {
      auto pb = xmod_pullback(group_groupoid(h), group_morphism(f), identity_xmod(g));
      REQUIRE(validate_xmod(pb).ok());
      CHECK(pb.fibres[0].order() == h.order());
      CHECK(find_xmod_isomorphism(pb, identity_xmod(h)).has_value());
    }
  }
  SUBCASE("along the identity") {
    for (auto const& c : catalog()) {
      auto pb = xmod_pullback(c.xmod.base, identity_morphism(c.xmod.base), c.xmod);
      CHECK(find_xmod_isomorphism(pb, c.xmod).has_value());
    }
  }
  SUBCASE("along random group homomorphisms") {
    for (int trial = 0; trial < 60; ++trial) {
      auto const& c    = catalog()[rng() % catalog().size()];
      auto const& lib  = small_groups();
      auto const& h    = lib[rng() % lib.size()].group;
      auto        homs = homomorphisms(h, library_group(c.p_name));
      auto const& f    = homs[rng() % homs.size()];
      auto        pb   = xmod_pullback(group_groupoid(h), group_morphism(f), c.xmod);
      INFO(c.name);
      CHECK(validate_xmod(pb).ok());
    }
  }
  SUBCASE("onto a connected groupoid") {
    auto g  = library_group("C4");
    auto cg = connected_groupoid({"a", "b"}, g);
    auto f  = collapse(cg, g);
    REQUIRE(validate_morphism(cg, group_groupoid(g), f).ok());
    for (auto const* c : catalog_over("C4")) {
      auto pb = xmod_pullback(cg, f, c->xmod);
      CHECK(validate_xmod(pb).ok());
    }
  }
}

TEST_CASE("morphisms of tables") {
  auto c2 = library_group("C2");
  auto c4 = library_group("C4");
  // C2 -> C4 over the identity of C4 with trivial boundaries: hom(C2, C2)
  auto zero = group_xmod(c2, c4, GroupHom{0, 0}, trivial_action(c2, c4));
  CHECK(count_xmod_morphisms(zero, zero, identity_morphism(zero.base)) == 2);
  // into the identity crossed module the boundary fixes the map
  CHECK(count_xmod_morphisms(identity_xmod(c4), identity_xmod(c4),
                             identity_morphism(group_groupoid(c4)))
        == 1);
  // from the zero crossed module there is exactly one
  auto z = zero_xmod(group_groupoid(c4));
  CHECK(count_xmod_morphisms(z, zero, identity_morphism(z.base)) == 1);

  // composites of morphisms are morphisms
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto const& a = catalog()[rng() % catalog().size()];
    auto        over = catalog_over(a.p_name);
    auto const& b    = *over[rng() % over.size()];
    auto const& c    = *over[rng() % over.size()];
    auto        id   = identity_morphism(a.xmod.base);
    std::vector<XModMorphism> ab, bc;
    for_each_xmod_morphism(a.xmod, b.xmod, id, [&](XModMorphism const& t) {
      ab.push_back(t);
      return ab.size() < 8;
    });
    for_each_xmod_morphism(b.xmod, c.xmod, id, [&](XModMorphism const& t) {
      bc.push_back(t);
      return bc.size() < 8;
    });
    for (auto const& s : ab) {
      for (auto const& t : bc) {
        XModMorphism st{{GroupHom(s.on_objects[0].size())}};
        for (Elt e = 0; e < st.on_objects[0].size(); ++e) {
          st.on_objects[0][e] = t.on_objects[0][s.on_objects[0][e]];
        }
        CHECK(validate_xmod_morphism(a.xmod, c.xmod, id, st).ok());
      }
    }
  }
}

TEST_CASE("presentations of tables realize back") {
  for (auto const& c : catalog()) {
    INFO(c.name);
    auto fp = to_fp(c.xmod);
    REQUIRE(validate_fp_xmod(fp).ok());
    CHECK(check_relator_boundaries(fp, RewriteBound{}) == Decision::Equal);
    auto r = realize(fp);
    CHECK(find_xmod_isomorphism(r.table, c.xmod).has_value());
    // the identity on generators is a morphism onto the table
    CHECK(count_fp_morphisms(fp, c.xmod) >= 1);
  }
}

TEST_CASE("induction along the identity") {
  auto g  = library_group("C4");
  auto cg = connected_groupoid({"a", "b"}, g);
  auto pb = xmod_pullback(cg, collapse(cg, g), identity_xmod(g));
  for (XModTable const* x : std::vector<XModTable const*>{&pb, &catalog_over("S3").back()->xmod}) {
    auto induced = xmod_induce(identity_morphism(x->base), x->base, *x);
    CHECK(find_xmod_isomorphism(realize(induced).table, *x).has_value());
  }
}

TEST_CASE("induction: C2 identity crossed module along C2 -> 1") {
  auto c2 = library_group("C2");
  auto t  = group_groupoid(trivial_group());
  auto x  = xmod_induce(GpdMorphism{{0}, {0, 0}}, t, identity_xmod(c2));
  auto r  = realize(x);
  // C2 -> 1 with the induced module the coinvariants of C2 acting on itself
  CHECK(r.table.fibres[0].order() == 2);
  CHECK(validate_xmod(r.table).ok());
}

TEST_CASE("induction: hom bijection") {
  // Hom_Q(f_* M, N) = Hom_f(M, N)
  std::mt19937 rng(17);
  std::size_t  checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    auto const& m    = catalog()[rng() % catalog().size()];
    auto const& p    = library_group(m.p_name);
    auto const& lib  = small_groups();
    auto const& qe   = lib[rng() % 8];
    auto        homs = homomorphisms(p, qe.group);
    auto const& f    = homs[rng() % homs.size()];
    auto        over = catalog_over(qe.name);
    if (over.empty()) {
      continue;
    }
    auto const& n   = *over[rng() % over.size()];
    auto        gm  = group_morphism(f);
    auto        ind = xmod_induce(gm, n.xmod.base, m.xmod);
    INFO(m.name << " along a hom to " << qe.name << " into " << n.name);
    CHECK(count_fp_morphisms(ind, n.xmod) == count_xmod_morphisms(m.xmod, n.xmod, gm));
    ++checked;
  }
  CHECK(checked > 40);
}

TEST_CASE("zero and empty presentations") {
  auto c3 = library_group("C3");
  FpXMod empty;
  empty.base = Base::finite(group_groupoid(c3));
  auto r     = realize(empty);
  CHECK(r.table.fibres[0].order() == 1);
  CHECK(find_xmod_isomorphism(r.table, zero_xmod(group_groupoid(c3))).has_value());
  auto ab = peiffer_abelianize(empty);
  CHECK(ab.module.generators.empty());
  REQUIRE(ab.cokernel.has_value());
  CHECK(ab.cokernel->groupoid.arrows.size() == 3);
}

TEST_CASE("free crossed module over C2 on the generator") {
  auto   c2 = library_group("C2");
  Base   b  = Base::finite(group_groupoid(c2));
  PgWord t  = b.arrow_word(1);
  auto   x  = free_xmod({{"r", 0, t}}, b);
  REQUIRE(validate_fp_xmod(x).ok());

  auto ab  = peiffer_abelianize(x);
  auto inv = module_simplify(ab.module);
  REQUIRE(inv.size() == 1);
  CHECK(inv[0] == AbelianInvariants{{}, 1});
  CHECK(ab.cokernel->groupoid.arrows.size() == 1);

  auto e = expand_fibre(x, 0, RewriteBound{});
  CHECK(e.pairs.size() == 2);
  CHECK(expanded_abelianization(e) == AbelianInvariants{{}, 1});

  // the fibre is infinite cyclic, so enumeration cannot close
  CHECK_FALSE(bounded_realize(x, RewriteBound{200, 64, 10000}).has_value());
}

TEST_CASE("free crossed module over a presented base") {
  auto   p = pg_free({"*"}, {{"a", 0, 0}});
  Base   b = Base::presented(p);
  PgWord a = pg_generator(p, 0);
  auto   x = free_xmod({{"r", 0, pg_compose(a, a)}}, b);
  REQUIRE(validate_fp_xmod(x).ok());
  auto ab = peiffer_abelianize(x);
  CHECK_FALSE(ab.cokernel.has_value());
  CHECK(ab.module.base.pres().relators.size() == 1);
  auto s = structural_report(ab.module);
  CHECK(s.generators == 1);
  CHECK(s.relations == 0);
  CHECK(s.free);
  CHECK_THROWS_AS(bounded_realize(x, RewriteBound{}), InfiniteBase);
}

TEST_CASE("free crossed modules: universal property and Peiffer boundaries") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    auto const& lib = small_groups();
    auto const& pe  = lib[rng() % 8];
    Base        b   = Base::finite(group_groupoid(pe.group));
    std::vector<XRelatorSpec> w;
    std::size_t               nr = 1 + rng() % 2;
    for (std::size_t i = 0; i < nr; ++i) {
      w.push_back({"r" + std::to_string(i), 0, random_loop(rng, b, 0)});
    }
    auto x = free_xmod(w, b);

    auto e = expand_fibre(x, 0, RewriteBound{});
    for (auto const& r : e.group.relators) {
      CHECK(expanded_boundary(x, e, r) == 0);
    }

    // morphisms into N: one free choice over the boundary per generator
    for (auto const* n : catalog_over(pe.name)) {
      std::size_t expected = 1;
      for (auto const& spec : w) {
        std::size_t target = b.evaluate(spec.word), hits = 0;
        for (std::size_t v : n->xmod.mu[0]) {
          hits += v == target;
        }
        expected *= hits;
      }
      INFO(n->name);
      CHECK(count_fp_morphisms(x, n->xmod) == expected);
    }
  }
}

TEST_CASE("relators with nontrivial boundary are rejected") {
  auto   c2 = library_group("C2");
  Base   b  = Base::finite(group_groupoid(c2));
  FpXMod x;
  x.base       = b;
  x.generators = {{"g", 0, b.arrow_word(1)}};
  x.relators   = {{{0, pg_identity(0), false}}};
  CHECK(check_relator_boundaries(x, RewriteBound{}) == Decision::Distinct);
  CHECK_THROWS_AS(bounded_realize(x, RewriteBound{}), InputError);
  x.relators = {{{0, pg_identity(0), false}, {0, pg_identity(0), false}}};
  auto r     = realize(x);
  CHECK(r.table.fibres[0].order() == 2);
}

TEST_CASE("retraction to a vertex") {
  auto g  = library_group("S3");
  auto cg = connected_groupoid({"a", "b", "c"}, g);
  auto x  = xmod_pullback(cg, collapse(cg, g), identity_xmod(g));
  REQUIRE(validate_xmod(x).ok());
  for (std::size_t x0 = 0; x0 < 3; ++x0) {
    auto r = retract_xmod_to_vertex(x, x0);
    CHECK(validate_xmod(r.vertex).ok());
    CHECK(r.vertex.fibres[0].order() == 6);
    for (std::size_t o = 0; o < 3; ++o) {
      CHECK(is_homomorphism(x.fibres[o], x.fibres[x0], r.s[o]));
      std::set<Elt> image(r.s[o].begin(), r.s[o].end());
      CHECK(image.size() == 6);
      // s is a morphism over r: mu(s m) = r(mu m)
      for (Elt m = 0; m < x.fibres[o].order(); ++m) {
        CHECK(r.vertex.mu[0][r.s[o][m]] == r.base.r[x.mu[o][m]]);
      }
    }
    auto fp = retract_fp_to_vertex(to_fp(x), x0);
    CHECK(find_xmod_isomorphism(realize(fp).table, r.vertex).has_value());
  }
}
