#include "cofib/xsq.hpp"

#include <map>
#include <numeric>
#include <set>

#include "cofib/todd_coxeter.hpp"

namespace cofib {

  namespace {

    // p.x = x^{p^-1}
    Elt left(std::vector<GroupHom> const& right, FinGroup const& p, Elt g, Elt x) {
      return right[p.inv(g)][x];
    }

    AbelianInvariants exponent_invariants(GroupPresentation const& g) {
      IntMatrix rels;
      for (auto const& r : g.relators) {
        IntVector row(g.generators, 0);
        for (Letter l : r) {
          row[generator_of(l)] += is_inverse(l) ? -1 : 1;
        }
        rels.push_back(std::move(row));
      }
      return abelian_invariants(rels, g.generators);
    }

    void require_one_object(XModTable const& x, char const* what) {
      if (x.base.objects.size() != 1 || x.fibres.size() != 1) {
        throw InputError(std::string(what) + ": expected a crossed module over one object");
      }
      auto report = validate_xmod(x);
      if (!report.ok()) {
        throw InputError(std::string(what) + ": " + report.failures.front());
      }
    }

    // The vertex group of a one-object groupoid; arrow a is element a.
    FinGroup base_group(XModTable const& x) {
      return vertex_group(x.base, 0).group;
    }

    void check_same_base(XModTable const& a, XModTable const& b, char const* what) {
      if (a.base.arrows.size() != b.base.arrows.size() || a.base.compose != b.base.compose) {
        throw InputError(std::string(what) + ": the crossed modules have different bases");
      }
    }

    bool is_automorphism(FinGroup const& g, GroupHom const& f) {
      if (!is_homomorphism(g, g, f)) {
        return false;
      }
      std::set<Elt> image(f.begin(), f.end());
      return image.size() == g.order();
    }

  }  // namespace

  ValidationReport validate_xsq_partial(CrossedSquare const& s) {
    ValidationReport report;
    auto const &     l = s.l, &m = s.m, &n = s.n, &p = s.p;
    if (s.lambda.size() != l.order() || s.lambda_prime.size() != l.order()
        || s.mu.size() != m.order() || s.nu.size() != n.order() || s.act_l.size() != p.order()
        || s.act_m.size() != p.order() || s.act_n.size() != p.order()
        || s.h.size() != m.order()) {
      report.add("shape: maps, actions or h have the wrong size");
      return report;
    }
    for (auto const& row : s.h) {
      if (row.size() != n.order()) {
        report.add("shape: h has the wrong size");
        return report;
      }
      for (Elt e : row) {
        if (e >= l.order()) {
          report.add("shape: h leaves L");
          return report;
        }
      }
    }
    if (!is_homomorphism(l, m, s.lambda) || !is_homomorphism(l, n, s.lambda_prime)
        || !is_homomorphism(m, p, s.mu) || !is_homomorphism(n, p, s.nu)) {
      report.add("homomorphisms: a side of the square is not a homomorphism");
      return report;
    }
    for (Elt x = 0; x < l.order(); ++x) {
      if (s.mu[s.lambda[x]] != s.nu[s.lambda_prime[x]]) {
        report.add("square commutes: fails at " + l.name(x));
        break;
      }
    }

    // crossed modules through P
    GroupHom mu_lambda(l.order());
    for (Elt x = 0; x < l.order(); ++x) {
      mu_lambda[x] = s.mu[s.lambda[x]];
    }
    std::vector<GroupHom> m_on_l, n_on_l;
    for (Elt x = 0; x < m.order(); ++x) {
      m_on_l.push_back(s.act_l[s.mu[x]]);
    }
    for (Elt x = 0; x < n.order(); ++x) {
      n_on_l.push_back(s.act_l[s.nu[x]]);
    }
    struct Side {
      char const*                  name;
      FinGroup const*              src;
      FinGroup const*              tgt;
      GroupHom const*              map;
      std::vector<GroupHom> const* action;
    };
    for (auto const& side : {Side{"mu", &m, &p, &s.mu, &s.act_m}, Side{"nu", &n, &p, &s.nu, &s.act_n},
                             Side{"mu lambda", &l, &p, &mu_lambda, &s.act_l},
                             Side{"lambda", &l, &m, &s.lambda, &m_on_l},
                             Side{"lambda'", &l, &n, &s.lambda_prime, &n_on_l}}) {
      bool autos = true;
      for (auto const& a : *side.action) {
        autos = autos && is_automorphism(*side.src, a);
      }
      if (!autos) {
        report.add(std::string("crossed module ") + side.name + ": action is not by automorphisms");
        continue;
      }
      auto r = validate_xmod(group_xmod(*side.src, *side.tgt, *side.map, *side.action));
      for (auto const& f : r.failures) {
        report.add(std::string("crossed module ") + side.name + ": " + f);
      }
    }
    if (!report.ok()) {
      return report;
    }

    // equivariance
    for (Elt g = 0; g < p.order(); ++g) {
      bool ok = true;
      for (Elt x = 0; x < l.order() && ok; ++x) {
        ok = s.lambda[s.act_l[g][x]] == s.act_m[g][s.lambda[x]]
             && s.lambda_prime[s.act_l[g][x]] == s.act_n[g][s.lambda_prime[x]];
      }
      for (Elt x = 0; x < m.order() && ok; ++x) {
        ok = s.mu[s.act_m[g][x]] == p.conj(s.mu[x], g);
      }
      for (Elt x = 0; x < n.order() && ok; ++x) {
        ok = s.nu[s.act_n[g][x]] == p.conj(s.nu[x], g);
      }
      if (!ok) {
        report.add("equivariance: fails for " + p.name(g));
      }
    }

    // h
    auto m_dot_n = [&](Elt a, Elt b) { return left(s.act_n, p, s.mu[a], b); };
    auto n_dot_m = [&](Elt b, Elt a) { return left(s.act_m, p, s.nu[b], a); };
    auto m_dot_l = [&](Elt a, Elt x) { return left(s.act_l, p, s.mu[a], x); };
    auto n_dot_l = [&](Elt b, Elt x) { return left(s.act_l, p, s.nu[b], x); };
    std::set<std::string> failed;
    for (Elt a = 0; a < m.order(); ++a) {
      for (Elt b = 0; b < n.order(); ++b) {
        Elt hab = s.h[a][b];
        if (s.lambda[hab] != m.mul(n_dot_m(b, a), m.inv(a))) {
          failed.insert("h: lambda h(m,n) = n.m m^-1");
        }
        if (s.lambda_prime[hab] != n.mul(b, n.inv(m_dot_n(a, b)))) {
          failed.insert("h: lambda' h(m,n) = n m.n^-1");
        }
        for (Elt a2 = 0; a2 < m.order(); ++a2) {
          if (s.h[m.mul(a, a2)][b] != l.mul(hab, m_dot_l(a, s.h[a2][b]))) {
            failed.insert("h: h(mm',n) = h(m,n) m.h(m',n)");
          }
        }
        for (Elt b2 = 0; b2 < n.order(); ++b2) {
          if (s.h[a][n.mul(b, b2)] != l.mul(n_dot_l(b, s.h[a][b2]), hab)) {
            failed.insert("h: h(m,nn') = n.h(m,n') h(m,n)");
          }
        }
        for (Elt g = 0; g < p.order(); ++g) {
          if (s.h[left(s.act_m, p, g, a)][left(s.act_n, p, g, b)] != left(s.act_l, p, g, hab)) {
            failed.insert("h: h(p.m, p.n) = p.h(m,n)");
          }
        }
      }
    }
    for (auto const& f : failed) {
      report.add(f);
    }
    return report;
  }

  CrossedSquare d_completion(XModTable const& mu, XModTable const& nu) {
    require_one_object(mu, "d_completion");
    require_one_object(nu, "d_completion");
    check_same_base(mu, nu, "d_completion");
    CrossedSquare s;
    s.m  = mu.fibres[0];
    s.n  = nu.fibres[0];
    s.p  = base_group(mu);
    s.mu = mu.mu[0];
    s.nu = nu.mu[0];
    s.act_m = mu.action;
    s.act_n = nu.action;
    std::vector<std::pair<Elt, Elt>>   elems;
    std::map<std::pair<Elt, Elt>, Elt> index;
    elems.emplace_back(s.m.identity(), s.n.identity());
    for (Elt a = 0; a < s.m.order(); ++a) {
      for (Elt b = 0; b < s.n.order(); ++b) {
        if (s.mu[a] == s.nu[b] && !(a == s.m.identity() && b == s.n.identity())) {
          elems.emplace_back(a, b);
        }
      }
    }
    std::vector<std::string> names;
    for (Elt i = 0; i < elems.size(); ++i) {
      index[elems[i]] = i;
      names.push_back("(" + s.m.name(elems[i].first) + "," + s.n.name(elems[i].second) + ")");
    }
    std::vector<std::vector<Elt>> table(elems.size(), std::vector<Elt>(elems.size()));
    for (Elt i = 0; i < elems.size(); ++i) {
      for (Elt j = 0; j < elems.size(); ++j) {
        table[i][j] = index.at({s.m.mul(elems[i].first, elems[j].first),
                                s.n.mul(elems[i].second, elems[j].second)});
      }
    }
    s.l = FinGroup(std::move(names), std::move(table));
    for (auto const& [a, b] : elems) {
      s.lambda.push_back(a);
      s.lambda_prime.push_back(b);
    }
    for (Elt g = 0; g < s.p.order(); ++g) {
      GroupHom act;
      for (auto const& [a, b] : elems) {
        act.push_back(index.at({s.act_m[g][a], s.act_n[g][b]}));
      }
      s.act_l.push_back(std::move(act));
    }
    s.h.assign(s.m.order(), std::vector<Elt>(s.n.order()));
    for (Elt a = 0; a < s.m.order(); ++a) {
      for (Elt b = 0; b < s.n.order(); ++b) {
        Elt  nm = left(s.act_m, s.p, s.nu[b], a);
        Elt  mn = left(s.act_n, s.p, s.mu[a], b);
        auto hm = s.m.mul(nm, s.m.inv(a));
        auto hn = s.n.mul(b, s.n.inv(mn));
        auto it = index.find({hm, hn});
        if (it == index.end()) {
          throw Error("d_completion: h(" + s.m.name(a) + "," + s.n.name(b) + ") is not in L");
        }
        s.h[a][b] = it->second;
      }
    }
    return s;
  }

  ////////////////////////////////////////////////////////////////////////
  // Tensor products
  ////////////////////////////////////////////////////////////////////////

  ValidationReport validate_mutual_action(MutualAction const& a) {
    ValidationReport report;
    auto const &     m = a.m, &n = a.n;
    if (a.m_on_n.size() != m.order() || a.n_on_m.size() != n.order()) {
      report.add("actions have the wrong size");
      return report;
    }
    for (auto const& f : a.m_on_n) {
      if (f.size() != n.order() || !is_automorphism(n, f)) {
        report.add("M does not act on N by automorphisms");
        return report;
      }
    }
    for (auto const& f : a.n_on_m) {
      if (f.size() != m.order() || !is_automorphism(m, f)) {
        report.add("N does not act on M by automorphisms");
        return report;
      }
    }
    for (Elt x = 0; x < m.order(); ++x) {
      for (Elt y = 0; y < m.order(); ++y) {
        for (Elt b = 0; b < n.order(); ++b) {
          if (a.m_on_n[m.mul(x, y)][b] != a.m_on_n[x][a.m_on_n[y][b]]) {
            report.add("the M action is not a left action");
            return report;
          }
        }
      }
    }
    for (Elt x = 0; x < n.order(); ++x) {
      for (Elt y = 0; y < n.order(); ++y) {
        for (Elt b = 0; b < m.order(); ++b) {
          if (a.n_on_m[n.mul(x, y)][b] != a.n_on_m[x][a.n_on_m[y][b]]) {
            report.add("the N action is not a left action");
            return report;
          }
        }
      }
    }
    // (m.n).m' = m.(n.(m^-1.m')) with M acting on itself by conjugation
    for (Elt x = 0; x < m.order(); ++x) {
      for (Elt b = 0; b < n.order(); ++b) {
        for (Elt y = 0; y < m.order(); ++y) {
          Elt lhs = a.n_on_m[a.m_on_n[x][b]][y];
          Elt rhs = m.conj(a.n_on_m[b][m.conj(y, x)], m.inv(x));
          if (lhs != rhs) {
            report.add("actions are not compatible on M");
            return report;
          }
        }
      }
    }
    for (Elt b = 0; b < n.order(); ++b) {
      for (Elt x = 0; x < m.order(); ++x) {
        for (Elt c = 0; c < n.order(); ++c) {
          Elt lhs = a.m_on_n[a.n_on_m[b][x]][c];
          Elt rhs = n.conj(a.m_on_n[x][n.conj(c, b)], n.inv(b));
          if (lhs != rhs) {
            report.add("actions are not compatible on N");
            return report;
          }
        }
      }
    }
    return report;
  }

  MutualAction trivial_mutual_action(FinGroup const& m, FinGroup const& n) {
    GroupHom idm(m.order()), idn(n.order());
    std::iota(idm.begin(), idm.end(), 0);
    std::iota(idn.begin(), idn.end(), 0);
    return MutualAction{m, n, std::vector<GroupHom>(m.order(), idn),
                        std::vector<GroupHom>(n.order(), idm)};
  }

  MutualAction mutual_action(XModTable const& mu, XModTable const& nu) {
    require_one_object(mu, "mutual_action");
    require_one_object(nu, "mutual_action");
    check_same_base(mu, nu, "mutual_action");
    FinGroup     p = base_group(mu);
    MutualAction a{mu.fibres[0], nu.fibres[0], {}, {}};
    for (Elt x = 0; x < a.m.order(); ++x) {
      a.m_on_n.push_back(nu.action[p.inv(mu.mu[0][x])]);
    }
    for (Elt y = 0; y < a.n.order(); ++y) {
      a.n_on_m.push_back(mu.action[p.inv(nu.mu[0][y])]);
    }
    return a;
  }

  TensorPresentation tensor_presentation(MutualAction const& a) {
    auto report = validate_mutual_action(a);
    if (!report.ok()) {
      throw InputError("tensor: " + report.failures.front());
    }
    auto const&        m = a.m;
    auto const&        n = a.n;
    TensorPresentation t;
    std::vector<std::vector<std::size_t>> index(m.order(), std::vector<std::size_t>(n.order(), kNone));
    for (Elt x = 0; x < m.order(); ++x) {
      for (Elt y = 0; y < n.order(); ++y) {
        if (x == m.identity() || y == n.identity()) {
          continue;
        }
        index[x][y] = t.pairs.size();
        t.pairs.emplace_back(x, y);
        t.names.push_back(m.name(x) + "@" + n.name(y));
        t.to_m.push_back(m.mul(a.n_on_m[y][x], m.inv(x)));
        t.to_n.push_back(n.mul(y, n.inv(a.m_on_n[x][y])));
      }
    }
    t.group.generators = t.pairs.size();
    auto gen = [&](Elt x, Elt y, bool inverse) -> GroupWord {
      if (index[x][y] == kNone) {
        return {};
      }
      return {letter(index[x][y], inverse)};
    };
    std::set<GroupWord> seen;
    auto add = [&](GroupWord w) {
      w = free_reduce(w);
      if (!w.empty() && seen.insert(w).second) {
        t.group.relators.push_back(std::move(w));
      }
    };
    for (Elt x = 0; x < m.order(); ++x) {
      for (Elt y = 0; y < n.order(); ++y) {
        // t(m m', n) = t(m, n) t(m.m', m.n)
        for (Elt x2 = 0; x2 < m.order(); ++x2) {
          GroupWord w = gen(m.mul(x, x2), y, true);
          w           = concat(w, gen(x, y, false));
          w           = concat(w, gen(m.conj(x2, m.inv(x)), a.m_on_n[x][y], false));
          add(std::move(w));
        }
        // t(m, n n') = t(n.m, n.n') t(m, n)
        for (Elt y2 = 0; y2 < n.order(); ++y2) {
          GroupWord w = gen(x, n.mul(y, y2), true);
          w           = concat(w, gen(a.n_on_m[y][x], n.conj(y2, n.inv(y)), false));
          w           = concat(w, gen(x, y, false));
          add(std::move(w));
        }
      }
    }
    return t;
  }

  TensorPresentation universal_xsq_presentation(XModTable const& mu, XModTable const& nu) {
    return tensor_presentation(mutual_action(mu, nu));
  }

  TensorStructure tensor_structure(TensorPresentation const& t) {
    return TensorStructure{t.group.generators, t.group.relators.size(),
                           exponent_invariants(t.group)};
  }

  std::optional<TensorTable> tensor_bounded(MutualAction const& a, RewriteBound const& b) {
    auto        t = tensor_presentation(a);
    ToddCoxeter tc(t.group, b.max_steps);
    if (!tc.run()) {
      return std::nullopt;
    }
    TensorTable out{tc.group(), tc.generator_images()};
    for (auto const& r : t.group.relators) {
      Elt e = out.group.identity();
      for (Letter l : r) {
        Elt g = out.generator_element[generator_of(l)];
        e     = out.group.mul(e, is_inverse(l) ? out.group.inv(g) : g);
      }
      if (e != out.group.identity()) {
        throw Error("tensor_bounded: realization violates a relator");
      }
    }
    return out;
  }

  AbelianInvariants group_abelianization(FinGroup const& g) {
    auto gens = generating_set(g);
    return exponent_invariants(cayley_presentation(g, gens));
  }

  AbelianInvariants abelian_tensor_oracle(FinGroup const& m, FinGroup const& n) {
    auto a = group_abelianization(m);
    auto b = group_abelianization(n);
    // cyclic orders, 0 for Z
    std::vector<Int> ca(a.factors), cb(b.factors);
    ca.insert(ca.end(), a.free_rank, 0);
    cb.insert(cb.end(), b.free_rank, 0);
    std::vector<Int> orders;
    for (Int x : ca) {
      for (Int y : cb) {
        orders.push_back(std::gcd(x, y));
      }
    }
    IntMatrix rels;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      IntVector row(orders.size(), 0);
      row[i] = orders[i];
      rels.push_back(std::move(row));
    }
    return abelian_invariants(rels, orders.size());
  }

}  // namespace cofib
