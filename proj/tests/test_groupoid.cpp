#include <random>

#include "cofib/groupoid.hpp"
#include "doctest.h"

using namespace cofib;

namespace {

  FinGroupoid c2_over_two() {
    FinGroupoid c2 = group_groupoid(library_group("C2"));
    return pullback_groupoid({"a", "b"}, {0, 0}, c2).groupoid;
  }

  // A random groupoid: a coproduct of connected groupoids on random blocks.
  FinGroupoid random_groupoid(std::mt19937& rng, std::size_t max_objects, std::size_t max_arrows) {
    auto const&              lib = small_groups();
    std::size_t              n   = 1 + rng() % max_objects;
    std::vector<FinGroupoid> parts;
    std::size_t              used = 0, arrows = 0;
    while (used < n) {
      std::size_t size = 1 + rng() % (n - used);
      auto const& g    = lib[rng() % lib.size()].group;
      if (arrows + size * size * g.order() > max_arrows) {
        size = 1;
        if (arrows + 1 > max_arrows) {
          break;
        }
      }
      std::vector<std::string> objs;
      for (std::size_t i = 0; i < size; ++i) {
        objs.push_back("o" + std::to_string(used + i));
      }
      auto const& grp = arrows + size * size * g.order() <= max_arrows ? g : lib[0].group;
      parts.push_back(connected_groupoid(objs, grp));
      arrows += size * size * grp.order();
      used += size;
    }
    return coproduct_gpd(parts);
  }

  // Independent oracle: enumerate every arrow map over the object map and
  // keep the functors.
  std::size_t brute_force_morphisms(FinGroupoid const& g, FinGroupoid const& h, ObjMap const& om) {
    std::vector<std::vector<std::size_t>> choices;
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      choices.push_back(h.hom(om[g.src(a)], om[g.tgt(a)]));
      if (choices.back().empty()) {
        return 0;
      }
    }
    std::vector<std::size_t> pick(g.arrows.size(), 0);
    std::size_t              count = 0;
    while (true) {
      GpdMorphism f{om, {}};
      for (std::size_t a = 0; a < pick.size(); ++a) {
        f.on_arrows.push_back(choices[a][pick[a]]);
      }
      count += validate_morphism(g, h, f).ok();
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == choices[i].size()) {
        pick[i++] = 0;
      }
      if (i == pick.size()) {
        return count;
      }
    }
  }

}  // namespace

TEST_CASE("validate_groupoid") {
  CHECK(validate_groupoid(discrete_groupoid({"1", "2", "3"})).ok());
  CHECK(validate_groupoid(codiscrete_groupoid({"0", "1"})).ok());
  CHECK(codiscrete_groupoid({"0", "1"}).arrows.size() == 4);

  FinGroupoid bad = group_groupoid(library_group("C2"));
  bad.compose[1][1] = 1;  // t t = t
  auto report       = validate_groupoid(bad);
  REQUIRE_FALSE(report.ok());
  bool cites_inverse = false;
  for (auto const& f : report.failures) {
    cites_inverse = cites_inverse || f.find("inverse axiom") != std::string::npos;
  }
  CHECK(cites_inverse);
}

TEST_CASE("discrete groupoids") {
  CHECK(discrete_groupoid({"a", "b"}).arrows.size() == 2);
  CHECK(discrete_groupoid({}).arrows.empty());
  CHECK(discrete_groupoid({"x"}).arrows.size() == 1);
}

TEST_CASE("initiality of discrete groupoids") {
  auto c2 = group_groupoid(library_group("C2"));
  auto f  = initiality_check({"a"}, c2, {0});
  CHECK(f.on_arrows[0] == c2.identity[0]);
  auto cd = codiscrete_groupoid({"0", "1"});
  auto g  = initiality_check({"a", "b"}, cd, {0, 1});
  CHECK(g.on_arrows == std::vector<std::size_t>{cd.identity[0], cd.identity[1]});
  CHECK(initiality_check({}, cd, {}).on_arrows.empty());
}

TEST_CASE("connected components") {
  auto c2 = group_groupoid(library_group("C2"));
  auto cc = connected_components(coproduct_gpd({c2, c2}));
  CHECK(cc.blocks.size() == 2);
  CHECK(connected_components(codiscrete_groupoid({"0", "1"})).blocks.size() == 1);
  CHECK(connected_components(discrete_groupoid({"1", "2", "3"})).blocks.size() == 3);
}

TEST_CASE("vertex groups") {
  CHECK(vertex_group(codiscrete_groupoid({"0", "1"}), 0).group.order() == 1);
  auto h = c2_over_two();
  CHECK(find_group_isomorphism(vertex_group(h, 0).group, library_group("C2")).has_value());
  auto c4 = group_groupoid(library_group("C4"));
  CHECK(find_group_isomorphism(vertex_group(c4, 0).group, library_group("C4")).has_value());
}

TEST_CASE("pullback of C2 along {a,b} -> {*}") {
  auto c2 = group_groupoid(library_group("C2"));
  auto pb = pullback_groupoid({"a", "b"}, {0, 0}, c2);
  CHECK(pb.groupoid.objects.size() == 2);
  CHECK(pb.groupoid.arrows.size() == 8);
  CHECK(connected_components(pb.groupoid).blocks.size() == 1);
  CHECK(validate_morphism(pb.groupoid, c2, pb.projection).ok());
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(pb.groupoid.hom(j, k).size() == c2.hom(0, 0).size());
    }
  }
  auto id = pullback_groupoid(c2.objects, {0}, c2);
  CHECK(find_groupoid_isomorphism(id.groupoid, c2).has_value());
  CHECK(pullback_groupoid({}, {}, c2).groupoid.arrows.empty());
}

TEST_CASE("coproducts") {
  auto c2 = group_groupoid(library_group("C2"));
  auto c3 = group_groupoid(library_group("C3"), "#");
  auto s  = coproduct_gpd({c2, c3});
  CHECK(s.objects.size() == 2);
  CHECK(s.arrows.size() == 5);
  CHECK(connected_components(s).blocks.size() == 2);
  CHECK(coproduct_gpd({}).arrows.empty());
  CHECK(validate_groupoid(coproduct_gpd({c2, c2})).ok());
}

TEST_CASE("spanning tree retraction") {
  auto cd = codiscrete_groupoid({"0", "1"});
  auto r  = spanning_tree_retraction(cd, 0);
  for (Elt e : r.r) {
    CHECK(e == r.vertex.group.identity());
  }
  auto h  = c2_over_two();
  auto rh = spanning_tree_retraction(h, 0);
  CHECK(rh.vertex.group.order() == 2);
  std::size_t to_identity = 0;
  for (Elt e : rh.r) {
    to_identity += e == rh.vertex.group.identity();
  }
  CHECK(to_identity == 4);
  CHECK_THROWS_AS(spanning_tree_retraction(discrete_groupoid({"a", "b"}), 0), InputError);
}

TEST_CASE("normal closure and quotients") {
  auto c4 = group_groupoid(library_group("C4"));
  // the element of order 2
  std::size_t t2 = kNone;
  for (std::size_t a = 0; a < 4; ++a) {
    if (!c4.is_identity(a) && c4.mul(a, a) == c4.identity[0]) {
      t2 = a;
    }
  }
  auto n = normal_closure(c4, {t2});
  CHECK(std::count(n.member.begin(), n.member.end(), true) == 2);
  auto q = quotient_groupoid(c4, n);
  CHECK(find_groupoid_isomorphism(q.groupoid, group_groupoid(library_group("C2"))).has_value());
  CHECK(validate_morphism(c4, q.groupoid, q.projection).ok());

  auto triv = quotient_groupoid(c4, normal_closure(c4, {}));
  CHECK(find_groupoid_isomorphism(triv.groupoid, c4).has_value());

  auto        h = c2_over_two();
  std::size_t x = kNone;
  for (std::size_t a : h.hom(0, 0)) {
    if (!h.is_identity(a)) {
      x = a;
    }
  }
  auto nh = normal_closure(h, {x});
  CHECK(std::count(nh.member.begin(), nh.member.end(), true) == 4);
  auto qh = quotient_groupoid(h, nh);
  CHECK(qh.groupoid.arrows.size() == 4);
  CHECK(find_groupoid_isomorphism(qh.groupoid, codiscrete_groupoid({"a", "b"})).has_value());
  CHECK_THROWS_AS(normal_closure(h, {h.hom(0, 1).front()}), InputError);
}

TEST_CASE("property: constructions produce valid groupoids") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = random_groupoid(rng, 4, 40);
    REQUIRE(validate_groupoid(g).ok());
    // pullback along a random map
    std::size_t              nj = 1 + rng() % 3;
    std::vector<std::string> j;
    ObjMap                   u;
    for (std::size_t i = 0; i < nj; ++i) {
      j.push_back("j" + std::to_string(i));
      u.push_back(rng() % g.objects.size());
    }
    auto pb = pullback_groupoid(j, u, g);
    CHECK(validate_groupoid(pb.groupoid).ok());
    for (std::size_t a = 0; a < nj; ++a) {
      for (std::size_t b = 0; b < nj; ++b) {
        CHECK(pb.groupoid.hom(a, b).size() == g.hom(u[a], u[b]).size());
      }
    }
    CHECK(validate_morphism(pb.groupoid, g, pb.projection).ok());
    // quotient by the closure of a random vertex arrow
    std::size_t a = rng() % g.arrows.size();
    std::size_t v = g.mul(a, g.inverse[a]);
    if (g.src(a) == g.tgt(a)) {
      v = a;
    }
    auto n = normal_closure(g, {v});
    CHECK(validate_normal(g, n).ok());
    auto q = quotient_groupoid(g, n);
    CHECK(validate_groupoid(q.groupoid).ok());
    // kernel of the projection is exactly the closure
    for (std::size_t b = 0; b < g.arrows.size(); ++b) {
      bool killed = q.groupoid.is_identity(q.projection.on_arrows[b]);
      CHECK(killed == static_cast<bool>(n.member[b]));
    }
    // reconstruction through the retraction on each component
    auto cc = connected_components(g);
    for (auto const& block : cc.blocks) {
      std::vector<std::size_t> arrows;
      for (std::size_t b = 0; b < g.arrows.size(); ++b) {
        if (cc.of[g.src(b)] == cc.of[block.front()]) {
          arrows.push_back(b);
        }
      }
      // restrict to the component via pullback along its inclusion
      std::vector<std::string> names;
      for (std::size_t x : block) {
        names.push_back(g.objects[x]);
      }
      auto comp = pullback_groupoid(names, block, g).groupoid;
      auto r    = spanning_tree_retraction(comp, 0);
      for (std::size_t c = 0; c < comp.arrows.size(); ++c) {
        CHECK(reconstruct(comp, r, c) == c);
      }
    }
  }
}

TEST_CASE("property: morphism search agrees with brute force") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    auto   g = random_groupoid(rng, 2, 6);
    auto   h = random_groupoid(rng, 2, 8);
    ObjMap om;
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      om.push_back(rng() % h.objects.size());
    }
    auto found = morphisms_over(g, h, om);
    CHECK(found.size() == brute_force_morphisms(g, h, om));
    for (auto const& f : found) {
      CHECK(validate_morphism(g, h, f).ok());
    }
  }
}

TEST_CASE("groupoid isomorphism search") {
  auto a = connected_groupoid({"x", "y"}, library_group("S3"));
  auto b = pullback_groupoid({"p", "q"}, {0, 0}, group_groupoid(library_group("S3"))).groupoid;
  CHECK(find_groupoid_isomorphism(a, b).has_value());
  auto c = connected_groupoid({"x", "y"}, library_group("C6"));
  CHECK_FALSE(find_groupoid_isomorphism(a, c).has_value());
  auto big = connected_groupoid({"a", "b", "c", "d", "e", "f"}, library_group("C8"));
  CHECK_THROWS_AS(find_groupoid_isomorphism(big, big), TooLarge);
}

TEST_CASE("groupoid catalog") {
  auto cat = groupoid_catalog({"a", "b"}, 12);
  for (auto const& g : cat) {
    CHECK(validate_groupoid(g).ok());
    CHECK(g.arrows.size() <= 12);
    CHECK(g.objects == std::vector<std::string>{"a", "b"});
  }
  // partitions {a}{b}: pairs of groups with |G|+|H| <= 12, plus {a,b}: 4|G| <= 12
  std::size_t pairs = 0;
  for (auto const& g : small_groups()) {
    for (auto const& h : small_groups()) {
      pairs += g.group.order() + h.group.order() <= 12;
    }
  }
  std::size_t connected = 0;
  for (auto const& g : small_groups()) {
    connected += 4 * g.group.order() <= 12;
  }
  CHECK(cat.size() == pairs + connected);
}

TEST_CASE("canonicalize sorts and preserves structure") {
  auto g = coproduct_gpd({group_groupoid(library_group("S3"), "z"), codiscrete_groupoid({"b", "a"})});
  auto before = g;
  canonicalize(g);
  CHECK(validate_groupoid(g).ok());
  CHECK(std::is_sorted(g.objects.begin(), g.objects.end()));
  CHECK(find_groupoid_isomorphism(g, before).has_value());
  auto again = g;
  canonicalize(again);
  CHECK(again == g);
}
