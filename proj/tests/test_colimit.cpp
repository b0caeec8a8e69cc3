#include <map>
#include <random>
#include <set>

#include "cofib/colimit.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cofib;
using namespace cofib::testing;

namespace {

  GpdMorphism discrete_into(FinGroupoid const& from, FinGroupoid const& to, ObjMap const& u) {
    GpdMorphism f{u, {}};
    for (std::size_t a = 0; a < from.arrows.size(); ++a) {
      f.on_arrows.push_back(to.identity[u[from.src(a)]]);
    }
    return f;
  }

  GpdDiagram circle_span() {
    auto       d2 = discrete_groupoid({"0", "1"});
    auto       pt = discrete_groupoid({"0"});
    auto       cd = codiscrete_groupoid({"0", "1"});
    GpdDiagram d;
    d.names = {"D", "P", "Z"};
    d.nodes = {d2, pt, cd};
    d.edges = {{0, 1, discrete_into(d2, pt, {0, 0})}, {0, 2, discrete_into(d2, cd, {0, 1})}};
    return d;
  }

  GpdDiagram group_span(FinGroup const& h, FinGroup const& g1, FinGroup const& g2,
                        GroupHom const& f1, GroupHom const& f2) {
    GpdDiagram d;
    d.names = {"H", "G1", "G2"};
    d.nodes = {group_groupoid(h), group_groupoid(g1), group_groupoid(g2)};
    d.edges = {{0, 1, group_morphism(f1)}, {0, 2, group_morphism(f2)}};
    return d;
  }

  FinGroup const& small_group(std::mt19937& rng, std::size_t max_order) {
    auto const& lib = small_groups();
    while (true) {
      auto const& g = lib[rng() % lib.size()].group;
      if (g.order() <= max_order) {
        return g;
      }
    }
  }

  GroupHom random_hom(std::mt19937& rng, FinGroup const& a, FinGroup const& b) {
    auto homs = homomorphisms(a, b);
    return homs[rng() % homs.size()];
  }

  // Cocones of a diagram of one-object groupoids into the group x.
  std::set<std::vector<GroupHom>> cocones(GpdDiagram const& d, FinGroup const& x) {
    std::vector<std::vector<GroupHom>> homs;
    for (auto const& g : d.nodes) {
      FinGroup grp = vertex_group(g, 0).group;
      homs.push_back(homomorphisms(grp, x));
    }
    std::set<std::vector<GroupHom>> out;
    std::vector<GroupHom>           cur(d.nodes.size());
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
      if (c == d.nodes.size()) {
        for (auto const& e : d.edges) {
          for (std::size_t a = 0; a < d.nodes[e.src].arrows.size(); ++a) {
            if (cur[e.tgt][e.map.on_arrows[a]] != cur[e.src][a]) {
              return;
            }
          }
        }
        out.insert(cur);
        return;
      }
      for (auto const& h : homs[c]) {
        cur[c] = h;
        rec(c + 1);
      }
    };
    rec(0);
    return out;
  }

  // N tensor_H ZK modulo the image of M tensor_G ZK, K = H / <<i G>>, for
  // group modules M over G, N over H and an equivariant theta: M -> N.
  AbelianInvariants exactness_oracle(FinGroup const& g, CyclicModule const& m, FinGroup const& h,
                                     CyclicModule const& n, GroupHom const& i,
                                     IntMatrix const& theta) {
    // K as cosets of the normal closure of the image of i
    std::set<Elt> normal{h.identity()};
    for (Elt e : i) {
      normal.insert(e);
    }
    bool grew = true;
    while (grew) {
      grew = false;
      for (Elt a : std::vector<Elt>(normal.begin(), normal.end())) {
        for (Elt b : std::vector<Elt>(normal.begin(), normal.end())) {
          grew = normal.insert(h.mul(a, b)).second || grew;
        }
        for (Elt c = 0; c < h.order(); ++c) {
          grew = normal.insert(h.conj(a, c)).second || grew;
        }
      }
    }
    std::vector<std::size_t> coset(h.order(), kNone);
    std::size_t              k = 0;
    for (Elt a = 0; a < h.order(); ++a) {
      if (coset[a] != kNone) {
        continue;
      }
      for (Elt s : normal) {
        coset[h.mul(s, a)] = k;
      }
      ++k;
    }
    // K acts on cosets by right multiplication: coset(a) * b = coset(a b)
    std::vector<Elt> rep(k);
    for (Elt a = h.order(); a-- > 0;) {
      rep[coset[a]] = a;
    }
    std::size_t nn   = n.group.gens;
    auto        idx  = [&](std::size_t j, std::size_t kk) { return j * k + kk; };
    std::size_t cols = nn * k;
    IntMatrix   rels;
    for (std::size_t kk = 0; kk < k; ++kk) {
      for (auto const& r : n.group.rels) {
        IntVector row(cols, 0);
        for (std::size_t j = 0; j < nn; ++j) {
          row[idx(j, kk)] = r[j];
        }
        rels.push_back(row);
      }
      // e_j h (x) k = e_j (x) pi(h) k
      for (Elt hh = 0; hh < h.order(); ++hh) {
        std::size_t moved = coset[h.mul(hh, rep[kk])];
        for (std::size_t j = 0; j < nn; ++j) {
          IntVector row(cols, 0);
          for (std::size_t l = 0; l < nn; ++l) {
            row[idx(l, kk)] += n.action[hh][j][l];
          }
          row[idx(j, moved)] -= 1;
          rels.push_back(row);
        }
      }
      // image of m_j (x) k
      for (std::size_t j = 0; j < m.group.gens; ++j) {
        IntVector row(cols, 0);
        for (std::size_t l = 0; l < nn; ++l) {
          row[idx(l, kk)] += theta[j][l];
        }
        rels.push_back(row);
      }
    }
    (void)g;
    return abelian_invariants(rels, cols);
  }

}  // namespace

TEST_CASE("shape connectivity") {
  CHECK(shape_components(Shape{3, {{0, 1}, {0, 2}}}).connected());
  CHECK(shape_components(Shape{2, {}}).count == 2);
  CHECK(shape_components(Shape{1, {}}).connected());
  CHECK(shape_components(Shape{4, {{1, 0}, {3, 2}}}).count == 2);
}

TEST_CASE("circle pushout") {
  auto c = colimit_gpd(circle_span(), RewriteBound{});
  REQUIRE(c.objects.size() == 1);
  CHECK(c.objects[0] == "0");
  CHECK_FALSE(c.base.finite());
  CHECK(pg_abelian_invariants(c.pres, 0) == AbelianInvariants{{}, 1});
  CHECK(c.functoriality.ok());
  // the image of 0>1 generates; its powers are distinct
  auto   z    = codiscrete_groupoid({"0", "1"});
  auto   fz   = Base::finite(z);
  PgWord iota = apply(c.legs[2], fz.arrow_word(z.arrow_index("0>1")));
  REQUIRE_FALSE(iota.letters.empty());
  std::vector<PgWord> powers{iota};
  for (int i = 2; i <= 20; ++i) {
    powers.push_back(pg_compose(powers.back(), iota));
  }
  for (std::size_t i = 0; i < powers.size(); ++i) {
    for (std::size_t j = i + 1; j < powers.size(); ++j) {
      CHECK(pg_word_problem_bounded(c.pres, powers[i], powers[j], RewriteBound{})
            == Decision::Distinct);
    }
  }
}

TEST_CASE("pushouts of one-object groupoids") {
  SUBCASE("identity legs") {
    auto g = library_group("S3");
    GroupHom id(g.order());
    std::iota(id.begin(), id.end(), 0);
    auto c = colimit_gpd(group_span(g, g, g, id, id), RewriteBound{});
    REQUIRE(c.base.finite());
    CHECK(find_groupoid_isomorphism(c.base.table(), group_groupoid(g)).has_value());
  }
  SUBCASE("two vertex groups collapsed") {
    auto       c2 = library_group("C2");
    auto       ab = coproduct_gpd({group_groupoid(c2, "a"), group_groupoid(c2, "b")});
    auto       dd = discrete_groupoid({"a", "b"});
    auto       pt = discrete_groupoid({"*"});
    GpdDiagram d;
    d.names = {"D", "C", "P"};
    d.nodes = {dd, ab, pt};
    d.edges = {{0, 1, discrete_into(dd, ab, {0, 1})}, {0, 2, discrete_into(dd, pt, {0, 0})}};
    auto c  = colimit_gpd(d, RewriteBound{});
    REQUIRE(c.objects.size() == 1);
    CHECK_FALSE(c.base.finite());
    // oracle: <x, y | x^2, y^2> abelianizes to Z^2 / (2e1, 2e2)
    CHECK(pg_abelian_invariants(c.pres, 0) == abelian_invariants({{2, 0}, {0, 2}}, 2));
    CHECK(pg_abelian_invariants(c.pres, 0) == AbelianInvariants{{2, 2}, 0});
  }
  SUBCASE("quotient") {
    auto c4 = library_group("C4");
    auto c2 = library_group("C2");
    GroupHom id{0, 1, 2, 3};
    auto     q = homomorphisms(c4, c2);
    for (auto const& f : q) {
      auto c = colimit_gpd(group_span(c4, c4, c2, id, f), RewriteBound{});
      REQUIRE(c.base.finite());
      // one leg is an isomorphism, so the pushout is the other corner
      CHECK(c.base.table().arrows.size() == 2);
    }
  }
}

TEST_CASE("disconnected diagrams are rejected") {
  GpdDiagram d;
  d.names = {"A", "B"};
  d.nodes = {group_groupoid(library_group("C2")), group_groupoid(library_group("C3"))};
  CHECK_THROWS_AS(colimit_gpd(d, RewriteBound{}), InputError);
}

TEST_CASE("colimit cocones are universal") {
  std::mt19937 rng(7);
  std::size_t  finite = 0;
  for (int trial = 0; trial < 60 && finite < 25; ++trial) {
    auto const& h  = small_group(rng, 6);
    auto const& g1 = small_group(rng, 6);
    auto const& g2 = small_group(rng, 6);
    auto        d  = group_span(h, g1, g2, random_hom(rng, h, g1), random_hom(rng, h, g2));
    auto        c  = colimit_gpd(d, RewriteBound{});
    CHECK(c.functoriality.ok());
    if (!c.base.finite()) {
      continue;
    }
    ++finite;
    for (auto const& xe : small_groups()) {
      if (xe.group.order() > 6) {
        continue;
      }
      auto x    = xe.group;
      auto want = cocones(d, x);
      std::set<std::vector<GroupHom>> got;
      std::size_t                     maps = 0;
      for (auto const& psi : morphisms_over(c.base.table(), group_groupoid(x), {0})) {
        std::vector<GroupHom> cone;
        for (auto const& leg : c.finite_legs) {
          GroupHom hh;
          for (std::size_t a : leg.on_arrows) {
            hh.push_back(psi.on_arrows[a]);
          }
          cone.push_back(std::move(hh));
        }
        got.insert(cone);
        ++maps;
      }
      CHECK(got == want);
      CHECK(maps == got.size());
    }
  }
  CHECK(finite >= 10);
}

TEST_CASE("functoriality is checked on composable edges") {
  auto       c2 = library_group("C2");
  auto       c4 = library_group("C4");
  auto       g1 = group_groupoid(trivial_group());
  auto       g2 = group_groupoid(c2);
  auto       g3 = group_groupoid(c4);
  GpdDiagram d;
  d.names = {"A", "B", "C"};
  d.nodes = {g1, g2, g3};
  d.edges = {{0, 1, group_morphism({0})},
             {1, 2, group_morphism({0, 2})},
             {0, 2, group_morphism({0})},
             {2, 2, identity_morphism(g3)}};
  auto c = colimit_gpd(d, RewriteBound{});
  CHECK(c.functoriality.ok());
  REQUIRE(c.base.finite());
  CHECK(c.base.table().arrows.size() == 4);
}

TEST_CASE("cocartesian certificates") {
  auto z = codiscrete_groupoid({"0", "1"});
  SUBCASE("universal morphism of the circle") {
    auto u       = universal_morphism({"*"}, {0, 0}, z);
    auto battery = cocartesian_battery(z, {"*"}, {0, 0}, 6);
    CHECK(battery.size() > 10);
    auto cert = check_cocartesian(z, Base::presented(u.presentation()), u.unit_morphism(),
                                  battery);
    CHECK(cert.pass);
    CHECK(cert.checked == battery.size());
  }
  SUBCASE("unit followed by a proper quotient") {
    auto         pt = discrete_groupoid({"*"});
    BaseMorphism psi{{0, 0}, {pg_identity(0)}};
    REQUIRE(Base::finite(z).pres().generators.size() == 1);
    auto battery = cocartesian_battery(z, {"*"}, {0, 0}, 6);
    auto cert    = check_cocartesian(z, Base::finite(pt), psi, battery);
    CHECK_FALSE(cert.pass);
    REQUIRE(cert.witness.has_value());
    CHECK(cert.factorizations[*cert.witness] == 0);
  }
  SUBCASE("isomorphism over an isomorphism") {
    auto g       = group_groupoid(library_group("S3"));
    auto fg      = Base::finite(g);
    auto battery = cocartesian_battery(g, {"*"}, {0}, 6);
    auto cert    = check_cocartesian(g, fg, identity_base_morphism(fg.pres()), battery);
    CHECK(cert.pass);
  }
  SUBCASE("battery item over the wrong map") {
    auto g  = codiscrete_groupoid({"0", "1"});
    auto fg = Base::finite(g);
    std::vector<BatteryItem> bad{{g, identity_morphism(g)}};
    auto u = universal_morphism({"*"}, {0, 0}, z);
    CHECK_THROWS_AS(
        check_cocartesian(z, Base::presented(u.presentation()), u.unit_morphism(), bad),
        InputError);
    (void)fg;
  }
}

TEST_CASE("pushout along a discrete map agrees with the universal morphism") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    auto z  = random_groupoid(rng, 3, 24);
    auto nj = 1 + rng() % 3;
    auto j  = names("j", nj);
    ObjMap u;
    for (std::size_t x = 0; x < z.objects.size(); ++x) {
      u.push_back(rng() % nj);
    }
    auto p  = pushout_along_discrete(j, u, z, RewriteBound{});
    auto uu = universal_morphism(j, u, z);
    auto ur = pg_realize(uu.presentation(), RewriteBound{});
    REQUIRE(p.colimit.objects.size() == nj);
    CHECK(p.colimit.base.finite() == ur.has_value());
    if (ur && p.colimit.base.finite()) {
      CHECK(find_groupoid_isomorphism(ur->groupoid, p.colimit.base.table()).has_value());
    }
    auto direct = object_invariants(Base::presented(uu.presentation()));
    auto pushed = object_invariants(p.colimit.base);
    for (std::size_t i = 0; i < nj; ++i) {
      CHECK(pushed[i] == direct[p.to_j[i]]);
    }
  }
  SUBCASE("discrete Z") {
    auto z = discrete_groupoid({"a", "b", "c"});
    auto p = pushout_along_discrete({"x", "y"}, {0, 1, 1}, z, RewriteBound{});
    REQUIRE(p.colimit.base.finite());
    CHECK(find_groupoid_isomorphism(p.colimit.base.table(), discrete_groupoid({"x", "y"}))
              .has_value());
  }
  SUBCASE("injective object map") {
    auto z = group_groupoid(library_group("C3"), "a");
    auto p = pushout_along_discrete({"x", "y"}, {0}, z, RewriteBound{});
    REQUIRE(p.colimit.base.finite());
    CHECK(p.colimit.base.table().arrows.size() == 4);
  }
}

TEST_CASE("module and crossed module pushouts along discrete maps") {
  std::mt19937 rng(41);
  auto const&  lib = small_groups();
  for (int trial = 0; trial < 20; ++trial) {
    auto const& g   = lib[rng() % 8].group;
    auto        cat = cyclic_module_catalog(g);
    auto const& cm  = cat[rng() % cat.size()];
    GpdModule   m   = group_module(g, cm.group, cm.action);
    // one object, pushed to a two-object set along an injection or onto one
    std::vector<std::string> j = rng() % 2 ? std::vector<std::string>{"x", "y"}
                                           : std::vector<std::string>{"x"};
    auto span = discrete_span(j, {0}, m);
    auto col  = colimit_mod(span, RewriteBound{});
    auto u    = universal_morphism(j, {0}, m.base);
    auto direct =
        module_pres_induce(to_pres(m), Base::presented(u.presentation()), u.unit_morphism());
    auto to_j = ObjMap(col.base.objects.size());
    for (std::size_t x = 0; x < j.size(); ++x) {
      to_j[col.base.object_legs[1][x]] = x;
    }
    auto a = module_coinvariants(col.module);
    auto b = module_coinvariants(direct);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i] == b[to_j[i]]);
    }
    if (col.base.base.finite()) {
      auto sa = module_simplify(col.module);
      auto ur = pg_realize(u.presentation(), RewriteBound{});
      REQUIRE(ur.has_value());
      auto sb = module_simplify(module_pres_induce(
          to_pres(m), Base::realized(u.presentation(), *ur), u.unit_morphism()));
      for (std::size_t i = 0; i < sa.size(); ++i) {
        CHECK(sa[i] == sb[to_j[i]]);
      }
    }
  }
  for (std::size_t i = 0; i < 20; ++i) {
    auto const& c    = xmod_catalog(64)[(i * 37) % xmod_catalog(64).size()];
    auto        span = discrete_span({"x", "y"}, {1}, c.xmod);
    auto        col  = colimit_xmod(span, RewriteBound{});
    auto        u    = universal_morphism({"x", "y"}, {1}, c.xmod.base);
    auto        direct =
        fp_xmod_induce(to_fp(c.xmod), Base::presented(u.presentation()), u.unit_morphism());
    auto a = peiffer_abelianize(col.xmod);
    auto b = peiffer_abelianize(direct);
    auto ia = module_coinvariants(a.module);
    auto ib = module_coinvariants(b.module);
    INFO(c.name);
    REQUIRE(ia.size() == 2);
    ObjMap to_j(2);
    for (std::size_t x = 0; x < 2; ++x) {
      to_j[col.base.object_legs[1][x]] = x;
    }
    for (std::size_t x = 0; x < 2; ++x) {
      CHECK(ia[x] == ib[to_j[x]]);
    }
    if (col.base.base.finite()) {
      auto r1 = bounded_realize(col.xmod, RewriteBound{});
      REQUIRE(r1.has_value());
      std::size_t y = col.base.object_legs[1][1];
      CHECK(r1->table.fibres[y].order() == c.xmod.fibres[0].order());
      CHECK(r1->table.fibres[1 - y].order() == 1);
    }
  }
}

TEST_CASE("fibre colimits agree with total colimits on connected diagrams") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto const& h  = small_group(rng, 8);
    auto const& g1 = small_group(rng, 8);
    auto const& g2 = small_group(rng, 8);
    auto        d  = group_span(h, g1, g2, random_hom(rng, h, g1), random_hom(rng, h, g2));
    auto        r  = fibre_vs_total(d, RewriteBound{});
    INFO(r.detail);
    CHECK(r.connected);
    CHECK(r.agree);
  }
  SUBCASE("single node") {
    GpdDiagram d{{"A"}, {group_groupoid(library_group("Q8"))}, {}};
    auto       r = fibre_vs_total(d, RewriteBound{});
    CHECK(r.agree);
    CHECK(r.fibre_arrows == std::optional<std::size_t>{8});
  }
}

TEST_CASE("fibre coproduct differs from the coproduct of groupoids") {
  GpdDiagram d;
  d.names = {"A", "B"};
  d.nodes = {group_groupoid(library_group("C2")), group_groupoid(library_group("C3"))};
  auto r  = fibre_vs_total(d, RewriteBound{});
  CHECK_FALSE(r.connected);
  CHECK_FALSE(r.agree);
  CHECK(r.fibre_objects == 1);
  CHECK_FALSE(r.fibre_arrows.has_value());
  REQUIRE(r.fibre_invariants.size() == 1);
  // Z/2 + Z/3 at one object
  CHECK(r.fibre_invariants[0] == AbelianInvariants{{6}, 0});
  CHECK(r.total_objects == 2);
  CHECK(r.total_arrows == std::optional<std::size_t>{5});
}

TEST_CASE("module pushout against a trivial corner") {
  // (M, G) -> (0, 1) against i: (M, G) -> (N, H) has colimit coker(M (x) K -> N (x) K)
  std::mt19937 rng(13);
  std::size_t  checked = 0;
  for (auto [gn, hn] : std::vector<std::pair<std::string, std::string>>{
           {"C2", "C4"}, {"C2", "S3"}, {"C3", "S3"}, {"C2", "D8"}, {"C2", "C2xC2"}, {"C1", "C3"},
           {"C2", "C6"}, {"C4", "Q8"}}) {
    auto const& g = library_group(gn);
    auto const& h = library_group(hn);
    for (auto const& i : homomorphisms(g, h)) {
      std::set<Elt> image(i.begin(), i.end());
      if (image.size() != g.order()) {
        continue;
      }
      auto gm = cyclic_module_catalog(g);
      auto hm = cyclic_module_catalog(h);
      for (int pick = 0; pick < 4; ++pick) {
        auto const& mc = gm[rng() % gm.size()];
        auto const& nc = hm[rng() % hm.size()];
        if (nc.group.rels.empty()) {
          continue;  // morphism search needs finite targets
        }
        auto        m  = group_module(g, mc.group, mc.action);
        auto        n  = group_module(h, nc.group, nc.action);
        std::vector<ModuleMorphism> thetas;
        for_each_module_morphism(m, n, group_morphism(i), [&](ModuleMorphism const& t) {
          thetas.push_back(t);
          return thetas.size() < 6;
        });
        if (thetas.empty()) {
          continue;
        }
        auto const& theta = thetas[rng() % thetas.size()];
        auto        one   = group_groupoid(trivial_group());
        ModDiagram  d;
        d.names = {"M", "0", "N"};
        d.nodes = {m, zero_module(one), n};
        d.edges = {{0, 1, GpdMorphism{{0}, std::vector<std::size_t>(g.order(), 0)},
                    ModuleMorphism{{IntMatrix(mc.group.gens, IntVector{})}}},
                   {0, 2, group_morphism(i), theta}};
        auto col = colimit_mod(d, RewriteBound{});
        REQUIRE(col.base.base.finite());
        auto inv = module_simplify(col.module);
        REQUIRE(inv.size() == 1);
        INFO(gn << " -> " << hn << ", " << mc.name << " -> " << nc.name);
        CHECK(inv[0] == exactness_oracle(g, mc, h, nc, i, theta.on_objects[0]));
        ++checked;
      }
    }
  }
  CHECK(checked > 20);
}
