#include <random>

#include "cofib/module.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cofib;
using namespace cofib::testing;

namespace {

  GpdModule sign_module() {
    return group_module(library_group("C2"), {1, {}}, {{{1}}, {{-1}}});
  }

  GpdModule trivial_z(FinGroup const& g) {
    return group_module(g, {1, {}}, std::vector<IntMatrix>(g.order(), IntMatrix{{1}}));
  }

  GpdModule from_catalog(FinGroup const& g, CyclicModule const& c) {
    return group_module(g, c.group, c.action);
  }

  // The map C2 -> 1 and 1 -> C2.
  GpdMorphism to_trivial(FinGroup const& g) {
    return GpdMorphism{{0}, std::vector<std::size_t>(g.order(), 0)};
  }

  AbelianInvariants at(ModuleInvariants const& inv, std::size_t x) {
    return inv.at(x);
  }

  // Z/2 or Z/3 on each component, trivial action.
  GpdModule random_finite_module(std::mt19937& rng, FinGroupoid const& g) {
    GpdModule m = zero_module(g);
    for (auto& grp : m.groups) {
      Int n = 2 + static_cast<Int>(rng() % 2);
      grp   = AbPresentation{1, {{n}}};
    }
    auto cc = connected_components(g);
    for (auto const& block : cc.blocks) {
      for (std::size_t x : block) {
        m.groups[x] = m.groups[block.front()];
      }
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      m.action[a] = {{1}};
    }
    return m;
  }

}  // namespace

TEST_CASE("module validation") {
  auto c2 = library_group("C2");
  CHECK(validate_module(zero_module(group_groupoid(c2))).ok());
  CHECK(validate_module(zero_module(codiscrete_groupoid({"0", "1", "2"}))).ok());
  CHECK(validate_module(sign_module()).ok());
  auto bad    = group_module(c2, {1, {}}, {{{1}}, {{2}}});
  auto report = validate_module(bad);
  CHECK_FALSE(report.ok());
  // Relations must be preserved: Z/3 with the generator sent to a non-multiple.
  auto ok3 = group_module(c2, {1, {{3}}}, {{{1}}, {{2}}});
  CHECK(validate_module(ok3).ok());  // 2 * 2 = 4 = 1 mod 3
  auto wrong_shape = group_module(c2, {2, {}}, {{{1, 0}, {0, 1}}, {{1}}});
  CHECK_FALSE(validate_module(wrong_shape).ok());
}

TEST_CASE("completing the action from generators") {
  auto g = connected_groupoid({"a", "b"}, library_group("C2"));
  GpdModule m = zero_module(g);
  for (auto& grp : m.groups) {
    grp = AbPresentation{1, {}};
  }
  for (std::size_t a = 0; a < g.arrows.size(); ++a) {
    m.action[a] = {};
  }
  // the loop (a,a,a) acts by -1, the connecting arrows trivially
  m.action[g.arrow_index("(a,a,a)")] = {{-1}};
  m.action[g.arrow_index("(a,1,b)")] = {{1}};
  m.action[g.arrow_index("(b,1,a)")] = {{1}};
  complete_action(m);
  CHECK(validate_module(m).ok());
  CHECK(m.action[g.arrow_index("(b,a,b)")] == IntMatrix{{-1}});
  GpdModule partial = zero_module(codiscrete_groupoid({"0", "1"}));
  partial.groups    = {{1, {}}, {1, {}}};
  partial.action    = {{}, {{1}}, {}, {}};
  CHECK_THROWS_AS(complete_action(partial), InputError);
}

TEST_CASE("pullback of modules") {
  auto n   = sign_module();
  auto id  = identity_morphism(n.base);
  auto pid = module_pullback(n.base, id, n);
  CHECK(module_invariants(pid) == module_invariants(n));
  CHECK(validate_module(pid).ok());
  // 1 -> C2
  auto one = group_groupoid(trivial_group());
  auto p   = module_pullback(one, GpdMorphism{{0}, {0}}, n);
  CHECK(validate_module(p).ok());
  CHECK(p.action == std::vector<IntMatrix>{{{1}}});
  auto z = module_pullback(one, GpdMorphism{{0}, {0}}, zero_module(n.base));
  CHECK(module_invariants(z).front().is_zero());
}

TEST_CASE("induced modules") {
  auto c2 = library_group("C2");
  auto one = group_groupoid(trivial_group());
  // C2 -> 1 on the sign module
  auto ind = module_induce(to_trivial(c2), one, sign_module());
  CHECK(validate_module_pres(ind).ok());
  CHECK(at(module_simplify(ind), 0) == AbelianInvariants{{2}, 0});
  CHECK(tensor_oracle(c2, {1, {}}, {{{1}}, {{-1}}}, trivial_group(), {0, 0})
        == AbelianInvariants{{2}, 0});
  // identity
  auto m   = group_module(c2, {1, {{4}}}, {{{1}}, {{3}}});
  auto idm = module_induce(identity_morphism(m.base), m.base, m);
  CHECK(module_simplify(idm) == module_invariants(m));
  // 1 -> C2 on trivial Z
  auto up = module_induce(GpdMorphism{{0}, {0}}, group_groupoid(c2), trivial_z(trivial_group()));
  CHECK(at(module_simplify(up), 0) == AbelianInvariants{{}, 2});
  CHECK(tensor_oracle(trivial_group(), {1, {}}, {{{1}}}, c2, {0}) == AbelianInvariants{{}, 2});
}

TEST_CASE("free modules") {
  auto c2 = group_groupoid(library_group("C2"));
  auto f1 = free_module({"b"}, {0}, Base::finite(c2));
  CHECK(structural_report(f1).relations == 0);
  CHECK(at(module_simplify(f1), 0) == AbelianInvariants{{}, 2});
  auto f0 = free_module({}, {}, Base::finite(c2));
  CHECK(at(module_simplify(f0), 0).is_zero());
  auto cd = codiscrete_groupoid({"0", "1"});
  auto f2 = module_simplify(free_module({"b"}, {0}, Base::finite(cd)));
  CHECK(f2 == ModuleInvariants{{{}, 1}, {{}, 1}});
  auto f3 = free_module({"b"}, {0}, Base::finite(group_groupoid(library_group("C3"))));
  CHECK(at(module_simplify(f3), 0) == AbelianInvariants{{}, 3});
  CHECK_THROWS_AS(free_module({"b"}, {3}, Base::finite(cd)), InputError);
}

TEST_CASE("simplification") {
  auto m = group_module(trivial_group(), {1, {{2}}}, {{{1}}});
  CHECK(at(module_simplify(to_pres(m)), 0) == AbelianInvariants{{2}, 0});
  // over a presented base only structure is available
  auto       circle = pg_free({"*"}, {{"i", 0, 0}});
  ModulePres p;
  p.base       = Base::presented(circle);
  p.generators = {{"b", 0}};
  CHECK(structural_report(p).free);
  CHECK_THROWS_AS(module_simplify(p), InfiniteBase);
}

TEST_CASE("free module universal property") {
  auto cd  = connected_groupoid({"0", "1"}, library_group("C2"));
  auto fm  = to_module(free_module({"a", "b"}, {0, 1}, Base::finite(cd)));
  CHECK(validate_module(fm.module).ok());
  // target: Z/3, the group component acting by -1
  GpdModule l = zero_module(cd);
  l.groups    = {{1, {{3}}}, {1, {{3}}}};
  for (std::size_t a = 0; a < cd.arrows.size(); ++a) {
    l.action[a] = {{cd.arrows[a].id.find(",a,") != std::string::npos ? 2 : 1}};
  }
  REQUIRE(validate_module(l).ok());
  std::size_t count = 0;
  std::set<std::pair<Int, Int>> images;
  auto id = identity_morphism(cd);
  for_each_module_morphism(fm.module, l, id, [&](ModuleMorphism const& f) {
    ++count;
    // images of the free generators (a, 1_0) and (b, 1_1)
    Int ia = f.on_objects[0][fm.coordinate[0][cd.identity[0]]][0];
    Int ib = f.on_objects[1][fm.coordinate[1][cd.identity[1]]][0];
    images.insert({((ia % 3) + 3) % 3, ((ib % 3) + 3) % 3});
    return true;
  });
  CHECK(count == 9);
  CHECK(images.size() == 9);
}

TEST_CASE("property: adjunction for induced modules") {
  std::mt19937 rng(3);
  auto const&  lib = small_groups();
  int          checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto const& g  = lib[1 + rng() % 5].group;
    auto const& h  = lib[1 + rng() % 5].group;
    auto        fs = homomorphisms(g, h);
    auto const& f  = fs[rng() % fs.size()];
    auto        mods = cyclic_module_catalog(g);
    auto const& cm   = mods[rng() % mods.size()];
    if (cm.group.rels.empty()) {
      continue;  // keep the fibres finite
    }
    auto        m  = from_catalog(g, cm);
    auto        nmods = cyclic_module_catalog(h);
    auto const& cn    = nmods[rng() % nmods.size()];
    if (cn.group.rels.empty()) {
      continue;
    }
    auto n  = from_catalog(h, cn);
    auto v  = group_morphism(f);
    auto ex = to_module(module_induce(v, n.base, m));
    REQUIRE(validate_module(ex.module).ok());
    auto psi = induce_unit(m, ex);
    REQUIRE(validate_module_morphism(m, ex.module, v, psi).ok());
    // unit triangle: psi is a morphism M -> v*(v_* M) over the identity
    auto pb = module_pullback(m.base, v, ex.module);
    CHECK(validate_module_morphism(m, pb, identity_morphism(m.base), psi).ok());
    std::vector<ModuleMorphism> over_v, over_id;
    for_each_module_morphism(m, n, v, [&](auto const& x) {
      over_v.push_back(x);
      return true;
    });
    auto hid = identity_morphism(n.base);
    for_each_module_morphism(ex.module, n, hid, [&](auto const& x) {
      over_id.push_back(x);
      return true;
    });
    CHECK(over_v.size() == over_id.size());
    // phi -> phi . psi is injective and lands in Hom_v
    for (std::size_t i = 0; i < over_id.size(); ++i) {
      auto ci = compose(psi, v, over_id[i], hid, n);
      CHECK(validate_module_morphism(m, n, v, ci).ok());
      for (std::size_t j = i + 1; j < over_id.size(); ++j) {
        CHECK_FALSE(same_module_morphism(n, v, ci, compose(psi, v, over_id[j], hid, n)));
      }
    }
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("property: induced module invariants match the tensor oracle") {
  std::mt19937 rng(11);
  auto const&  lib = small_groups();
  for (int trial = 0; trial < 60; ++trial) {
    auto const& g    = lib[rng() % lib.size()].group;
    auto const& h    = lib[rng() % lib.size()].group;
    auto        fs   = homomorphisms(g, h);
    auto const& f    = fs[rng() % fs.size()];
    auto        mods = cyclic_module_catalog(g);
    auto const& c    = mods[rng() % mods.size()];
    auto        ind  = module_induce(group_morphism(f), group_groupoid(h), from_catalog(g, c));
    CHECK(at(module_simplify(ind), 0) == tensor_oracle(g, c.group, c.action, h, f));
  }
}

TEST_CASE("property: simplification does not depend on generator order") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_groupoid(rng, 3, 24);
    std::vector<std::string> b = names("b", 1 + rng() % 3);
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < b.size(); ++i) {
      t.push_back(rng() % g.objects.size());
    }
    auto base = Base::finite(g);
    auto p    = free_module(b, t, base);
    // add a random relation at each generator's object
    for (std::size_t k = 0; k < p.generators.size(); ++k) {
      Int coef = 2 + static_cast<Int>(rng() % 3);
      p.relations.push_back({{coef, k, pg_identity(p.generators[k].at)}});
    }
    auto inv = module_simplify(p);
    auto q   = p;
    std::vector<std::size_t> perm(p.generators.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t k = 0; k < perm.size(); ++k) {
      q.generators[perm[k]] = p.generators[k];
    }
    for (auto& rel : q.relations) {
      for (auto& term : rel) {
        term.gen = perm[term.gen];
      }
    }
    CHECK(module_simplify(q) == inv);
    // rank per object: generators times arrows into it, less torsion
    for (std::size_t y = 0; y < g.objects.size(); ++y) {
      std::size_t expected = 0;
      for (std::size_t k = 0; k < b.size(); ++k) {
        expected += g.hom(t[k], y).size();
      }
      CHECK(inv[y].free_rank + inv[y].factors.size() <= expected);
      CHECK(inv[y].free_rank == 0);
    }
  }
}

TEST_CASE("finite random modules validate and pull back") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_groupoid(rng, 3, 20);
    auto m = random_finite_module(rng, g);
    CHECK(validate_module(m).ok());
    auto pb = pullback_groupoid({"j0", "j1"}, {0, g.objects.size() - 1}, g);
    auto pm = module_pullback(pb.groupoid, pb.projection, m);
    CHECK(validate_module(pm).ok());
  }
}
