#include <numeric>

#include "cofib/xsq.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cofib;
using namespace cofib::testing;

namespace {

  std::vector<CatalogXMod> const& catalog() {
    return xmod_catalog(64);
  }

  bool small(CatalogXMod const& c) {
    return library_group(c.m_name).order() <= 8 && library_group(c.p_name).order() <= 8;
  }

  // Pairs of catalog crossed modules over the same P.
  template <class F>
  void for_each_pair(F const& visit, std::size_t max_total = 64) {
    for (auto const& a : catalog()) {
      for (auto const& b : catalog()) {
        if (a.p_name != b.p_name || !small(a) || !small(b)) {
          continue;
        }
        if (a.xmod.fibres[0].order() * b.xmod.fibres[0].order() > max_total) {
          continue;
        }
        visit(a, b);
      }
    }
  }

  Elt left(std::vector<GroupHom> const& right, FinGroup const& p, Elt g, Elt x) {
    return right[p.inv(g)][x];
  }

  // The square obtained from one crossed module mu by taking N = P, L = M.
  CrossedSquare identity_side(XModTable const& x) {
    return d_completion(x, identity_xmod(vertex_group(x.base, 0).group));
  }

  Elt evaluate(FinGroup const& g, std::vector<Elt> const& images, GroupWord const& w) {
    Elt e = g.identity();
    for (Letter l : w) {
      Elt x = images[generator_of(l)];
      e     = g.mul(e, is_inverse(l) ? g.inv(x) : x);
    }
    return e;
  }

  bool square_morphism(CrossedSquare const& s, CrossedSquare const& t, GroupHom const& fl,
                       GroupHom const& fm, GroupHom const& fn) {
    for (Elt x = 0; x < s.l.order(); ++x) {
      if (fm[s.lambda[x]] != t.lambda[fl[x]] || fn[s.lambda_prime[x]] != t.lambda_prime[fl[x]]) {
        return false;
      }
    }
    for (Elt x = 0; x < s.m.order(); ++x) {
      if (t.mu[fm[x]] != s.mu[x]) {
        return false;
      }
    }
    for (Elt x = 0; x < s.n.order(); ++x) {
      if (t.nu[fn[x]] != s.nu[x]) {
        return false;
      }
    }
    for (Elt g = 0; g < s.p.order(); ++g) {
      for (Elt x = 0; x < s.l.order(); ++x) {
        if (fl[s.act_l[g][x]] != t.act_l[g][fl[x]]) {
          return false;
        }
      }
      for (Elt x = 0; x < s.m.order(); ++x) {
        if (fm[s.act_m[g][x]] != t.act_m[g][fm[x]]) {
          return false;
        }
      }
      for (Elt x = 0; x < s.n.order(); ++x) {
        if (fn[s.act_n[g][x]] != t.act_n[g][fn[x]]) {
          return false;
        }
      }
    }
    for (Elt a = 0; a < s.m.order(); ++a) {
      for (Elt b = 0; b < s.n.order(); ++b) {
        if (fl[s.h[a][b]] != t.h[fm[a]][fn[b]]) {
          return false;
        }
      }
    }
    return true;
  }

  // Square morphisms over the identity of P, by enumerating all triples of
  // homomorphisms.
  std::size_t count_square_morphisms(CrossedSquare const& s, CrossedSquare const& t) {
    std::vector<GroupHom> ls, ms, ns;
    for_each_homomorphism(s.l, t.l, [&](GroupHom const& f) {
      ls.push_back(f);
      return true;
    });
    for_each_homomorphism(s.m, t.m, [&](GroupHom const& f) {
      ms.push_back(f);
      return true;
    });
    for_each_homomorphism(s.n, t.n, [&](GroupHom const& f) {
      ns.push_back(f);
      return true;
    });
    std::size_t count = 0;
    for (auto const& fl : ls) {
      for (auto const& fm : ms) {
        for (auto const& fn : ns) {
          count += square_morphism(s, t, fl, fm, fn);
        }
      }
    }
    return count;
  }

  GpdMorphism identity_one_object(FinGroup const& p) {
    GpdMorphism f{{0}, GroupHom(p.order())};
    std::iota(f.on_arrows.begin(), f.on_arrows.end(), 0);
    return f;
  }

}  // namespace

TEST_CASE("d_completion: small instances") {
  auto const& c2 = library_group("C2");
  auto const& c3 = library_group("C3");

  SUBCASE("identity on C2 gives L = C2 and trivial h") {
    auto s = d_completion(identity_xmod(c2), identity_xmod(c2));
    CHECK(validate_xsq_partial(s).ok());
    CHECK(s.l.order() == 2);
    for (auto const& row : s.h) {
      for (Elt e : row) {
        CHECK(e == s.l.identity());
      }
    }
  }

  SUBCASE("M = 1 gives L = ker nu") {
    auto id3 = identity_xmod(c3);
    auto one = group_xmod(trivial_group(), c3, {c3.identity()},
                          std::vector<GroupHom>(3, GroupHom{0}));
    REQUIRE(validate_xmod(one).ok());
    auto s = d_completion(one, id3);
    CHECK(validate_xsq_partial(s).ok());
    CHECK(s.l.order() == 1);

    // nu: C2 -> C3 trivial, kernel C2
    auto triv = group_xmod(c2, c3, {0, 0}, std::vector<GroupHom>(3, GroupHom{0, 1}));
    REQUIRE(validate_xmod(triv).ok());
    auto k = d_completion(one, triv);
    CHECK(validate_xsq_partial(k).ok());
    CHECK(k.l.order() == 2);
  }

  SUBCASE("trivial action: h(t,t) = (1,1)") {
    auto triv = group_xmod(c2, trivial_group(), {0, 0}, {GroupHom{0, 1}});
    auto s    = d_completion(triv, triv);
    CHECK(validate_xsq_partial(s).ok());
    CHECK(s.l.order() == 4);
    CHECK(s.h[1][1] == s.l.identity());
  }

  SUBCASE("inputs over different bases are rejected") {
    CHECK_THROWS_AS(d_completion(identity_xmod(c2), identity_xmod(c3)), InputError);
  }
}

TEST_CASE("validate_xsq_partial: failures name the axiom") {
  auto const& c2 = library_group("C2");
  auto        s  = d_completion(identity_xmod(c2), identity_xmod(c2));

  SUBCASE("the all-trivial square is valid") {
    auto one = trivial_group();
    auto t   = d_completion(identity_xmod(one), identity_xmod(one));
    CHECK(validate_xsq_partial(t).ok());
    CHECK(t.l.order() == 1);
  }

  SUBCASE("square does not commute") {
    auto bad     = s;
    bad.lambda   = {0, 1};
    bad.lambda_prime = {0, 0};
    bad.l        = c2;
    bad.act_l    = {GroupHom{0, 1}, GroupHom{0, 1}};
    bad.h        = {{0, 0}, {0, 0}};
    auto report  = validate_xsq_partial(bad);
    REQUIRE_FALSE(report.ok());
    bool named = false;
    for (auto const& f : report.failures) {
      named = named || f.rfind("square commutes", 0) == 0;
    }
    CHECK(named);
  }

  SUBCASE("h leaving the kernel conditions") {
    // L = M = N = P = C2 with identity maps; h(t,t) = t violates lambda h = 1.
    CrossedSquare t;
    t.l = t.m = t.n = t.p = c2;
    t.lambda = t.lambda_prime = t.mu = t.nu = {0, 1};
    t.act_l = t.act_m = t.act_n = {GroupHom{0, 1}, GroupHom{0, 1}};
    t.h                          = {{0, 0}, {0, 1}};
    auto report                  = validate_xsq_partial(t);
    REQUIRE_FALSE(report.ok());
    bool named = false;
    for (auto const& f : report.failures) {
      named = named || f.rfind("h:", 0) == 0;
    }
    CHECK(named);
    t.h = {{0, 0}, {0, 0}};
    CHECK(validate_xsq_partial(t).ok());
  }

  SUBCASE("wrong sizes") {
    auto bad = s;
    bad.h.pop_back();
    CHECK_FALSE(validate_xsq_partial(bad).ok());
  }
}

TEST_CASE("d_completion: h formula pointwise over catalog pairs") {
  std::size_t pairs = 0;
  for_each_pair([&](CatalogXMod const& a, CatalogXMod const& b) {
    auto s = d_completion(a.xmod, b.xmod);
    REQUIRE_MESSAGE(validate_xsq_partial(s).ok(), a.name, " ", b.name);
    // independent: recompute the fibre product and h from the crossed modules
    auto const& m = a.xmod.fibres[0];
    auto const& n = b.xmod.fibres[0];
    auto        p = vertex_group(a.xmod.base, 0).group;
    std::size_t size = 0;
    for (Elt x = 0; x < m.order(); ++x) {
      for (Elt y = 0; y < n.order(); ++y) {
        size += a.xmod.mu[0][x] == b.xmod.mu[0][y];
      }
    }
    CHECK(s.l.order() == size);
    for (Elt x = 0; x < m.order(); ++x) {
      for (Elt y = 0; y < n.order(); ++y) {
        // n.m = m^{nu(n)^-1}
        Elt nm = a.xmod.action[p.inv(b.xmod.mu[0][y])][x];
        Elt mn = b.xmod.action[p.inv(a.xmod.mu[0][x])][y];
        Elt hl = s.h[x][y];
        CHECK(s.lambda[hl] == m.mul(nm, m.inv(x)));
        CHECK(s.lambda_prime[hl] == n.mul(y, n.inv(mn)));
      }
    }
    ++pairs;
  });
  CHECK(pairs > 100);
}

TEST_CASE("d_completion: square morphisms match pairs of crossed module morphisms") {
  // Sources: D-completions and identity-sided squares of catalog entries over
  // groups of order <= 4; targets: D-completions over the same P.
  std::size_t checked = 0;
  for (auto const& p_name : {"C1", "C2", "C3", "C2xC2"}) {
    std::vector<CatalogXMod const*> over;
    for (auto const& c : catalog()) {
      if (c.p_name == p_name && c.xmod.fibres[0].order() <= 4) {
        over.push_back(&c);
      }
    }
    auto const& p  = library_group(p_name);
    auto        id = identity_one_object(p);
    for (auto const* a : over) {
      std::vector<CrossedSquare> sources{identity_side(a->xmod)};
      for (auto const* b : over) {
        sources.push_back(d_completion(a->xmod, b->xmod));
      }
      for (auto const& s : sources) {
        REQUIRE(validate_xsq_partial(s).ok());
        auto smu = group_xmod(s.m, s.p, s.mu, s.act_m);
        auto snu = group_xmod(s.n, s.p, s.nu, s.act_n);
        for (auto const* c : over) {
          for (auto const* d : over) {
            if (c->xmod.fibres[0].order() * d->xmod.fibres[0].order() > 8) {
              continue;
            }
            auto        t     = d_completion(c->xmod, d->xmod);
            std::size_t left  = count_square_morphisms(s, t);
            std::size_t right = count_xmod_morphisms(smu, c->xmod, id)
                                * count_xmod_morphisms(snu, d->xmod, id);
            CHECK_MESSAGE(left == right, a->name, " ", c->name, " ", d->name);
            ++checked;
          }
        }
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("mutual actions") {
  auto const& s3 = library_group("S3");
  auto        a  = mutual_action(identity_xmod(s3), identity_xmod(s3));
  CHECK(validate_mutual_action(a).ok());
  CHECK(validate_mutual_action(trivial_mutual_action(s3, library_group("C2"))).ok());

  // S3 acting on itself by conjugation from one side only: the compatibility
  // (n.m).n' = n.(m.(n^-1.n')) fails for noncommuting m, n.
  MutualAction bad = trivial_mutual_action(s3, s3);
  for (Elt x = 0; x < s3.order(); ++x) {
    for (Elt y = 0; y < s3.order(); ++y) {
      bad.m_on_n[x][y] = s3.conj(y, s3.inv(x));
    }
  }
  CHECK(validate_mutual_action(bad).ok() == false);
  CHECK_THROWS_AS(tensor_presentation(bad), InputError);
}

TEST_CASE("tensor: known small values") {
  RewriteBound b;
  auto         order = [&](MutualAction const& a) -> std::size_t {
    auto t = tensor_bounded(a, b);
    REQUIRE(t.has_value());
    return t->group.order();
  };
  auto const& c2 = library_group("C2");
  auto const& c3 = library_group("C3");
  CHECK(order(trivial_mutual_action(c2, c2)) == 2);
  CHECK(order(trivial_mutual_action(c3, c3)) == 3);
  CHECK(order(trivial_mutual_action(c2, c3)) == 1);
  CHECK(order(trivial_mutual_action(trivial_group(), library_group("S3"))) == 1);
  CHECK(order(trivial_mutual_action(library_group("C2xC2"), library_group("C2xC2"))) == 16);
  CHECK(order(trivial_mutual_action(library_group("C4"), library_group("C6"))) == 2);
  // the nonabelian tensor square of S3 is cyclic of order 6
  auto const& s3 = library_group("S3");
  auto        sq = tensor_bounded(mutual_action(identity_xmod(s3), identity_xmod(s3)), b);
  REQUIRE(sq.has_value());
  CHECK(sq->group.order() == 6);
  CHECK(group_abelianization(sq->group).factors == std::vector<Int>{6});
  // C2 (x) C2 with the trivial crossed modules over C2
  auto const& id2 = identity_xmod(c2);
  CHECK(order(mutual_action(id2, id2)) == 2);
}

TEST_CASE("tensor: structure and boundaries") {
  auto const& c2 = library_group("C2");
  auto        t  = tensor_presentation(trivial_mutual_action(c2, c2));
  CHECK(t.group.generators == 1);
  CHECK(t.names == std::vector<std::string>{c2.name(1) + "@" + c2.name(1)});
  auto st = tensor_structure(t);
  CHECK(st.generators == 1);
  CHECK(st.abelianization.factors == std::vector<Int>{2});
  CHECK(st.abelianization.free_rank == 0);

  auto empty = universal_xsq_presentation(
      group_xmod(trivial_group(), c2, {0}, {GroupHom{0}, GroupHom{0}}), identity_xmod(c2));
  CHECK(empty.group.generators == 0);
  CHECK(empty.group.relators.empty());

  // t(m,n) -> h(m,n) respects every relator: the tensor maps onto the
  // D-completion corner generated by h.
  std::size_t pairs = 0;
  for_each_pair(
      [&](CatalogXMod const& a, CatalogXMod const& b) {
        auto s  = d_completion(a.xmod, b.xmod);
        auto tp = universal_xsq_presentation(a.xmod, b.xmod);
        std::vector<Elt> images;
        for (std::size_t g = 0; g < tp.pairs.size(); ++g) {
          auto [x, y] = tp.pairs[g];
          images.push_back(s.h[x][y]);
          CHECK(s.lambda[s.h[x][y]] == tp.to_m[g]);
          CHECK(s.lambda_prime[s.h[x][y]] == tp.to_n[g]);
        }
        for (auto const& r : tp.group.relators) {
          CHECK(evaluate(s.l, images, r) == s.l.identity());
        }
        ++pairs;
      },
      16);
  CHECK(pairs > 20);
}

TEST_CASE("tensor: trivial actions agree with the abelian oracle") {
  RewriteBound b;
  std::size_t  checked = 0;
  for (auto const& gm : small_groups()) {
    for (auto const& gn : small_groups()) {
      if (gm.group.order() * gn.group.order() > 36) {
        continue;
      }
      auto a  = trivial_mutual_action(gm.group, gn.group);
      auto t  = tensor_bounded(a, b);
      REQUIRE_MESSAGE(t.has_value(), gm.name, " ", gn.name);
      auto oracle = abelian_tensor_oracle(gm.group, gn.group);
      REQUIRE(oracle.free_rank == 0);
      Int expected = 1;
      for (Int f : oracle.factors) {
        expected *= f;
      }
      CHECK_MESSAGE(Int(t->group.order()) == expected, gm.name, " ", gn.name);
      CHECK(group_abelianization(t->group).factors == oracle.factors);
      auto st = tensor_structure(tensor_presentation(a));
      CHECK(st.abelianization.factors == oracle.factors);
      ++checked;
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("tensor: left action helper agrees with mutual_action") {
  auto const& s3 = library_group("S3");
  auto        x  = identity_xmod(s3);
  auto        a  = mutual_action(x, x);
  for (Elt m = 0; m < s3.order(); ++m) {
    for (Elt n = 0; n < s3.order(); ++n) {
      CHECK(a.m_on_n[m][n] == left(x.action, s3, m, n));
      CHECK(a.m_on_n[m][n] == s3.conj(n, s3.inv(m)));
    }
  }
}
