#ifndef COFIB_XSQ_HPP_
#define COFIB_XSQ_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cofib/group.hpp"
#include "cofib/linalg.hpp"
#include "cofib/presented.hpp"
#include "cofib/xmod.hpp"

namespace cofib {

  // L -> M, L -> N, M -> P, N -> P with right actions of P on L, M, N
  // (per element of P) and h: M x N -> L.
  //
  // Left actions are written p.x := x^{p^-1}; m and n act through mu and nu.
  struct CrossedSquare {
    FinGroup                      l, m, n, p;
    GroupHom                      lambda, lambda_prime, mu, nu;
    std::vector<GroupHom>         act_l, act_m, act_n;
    std::vector<std::vector<Elt>> h;  // [m][n]
  };

  // The checked subset: the square commutes; lambda, lambda', mu, nu are
  // P-equivariant; lambda, lambda', mu, nu and mu lambda are crossed modules
  // (L acted on by M and N through P); and pointwise
  //   lambda h(m,n) = n.m m^-1,       lambda' h(m,n) = n m.n^-1,
  //   h(m m', n) = h(m,n) m.h(m',n),  h(m, n n') = n.h(m,n') h(m,n),
  //   h(p.m, p.n) = p.h(m,n).
  // Failures name the axiom.
  ValidationReport validate_xsq_partial(CrossedSquare const& s);

  // L = M x_P N with the projections and h(m,n) = (n.m m^-1, n m.n^-1).
  // Both inputs are crossed modules over one-object groupoids with the same
  // vertex group.
  CrossedSquare d_completion(XModTable const& mu, XModTable const& nu);

  ////////////////////////////////////////////////////////////////////////
  // Tensor products
  ////////////////////////////////////////////////////////////////////////

  // Groups acting on each other on the left: m_on_n[m][n] = m.n.
  struct MutualAction {
    FinGroup              m, n;
    std::vector<GroupHom> m_on_n, n_on_m;
  };
  // Each action is by automorphisms, and (m.n).m' = m.(n.(m^-1.m')) and
  // symmetrically.
  ValidationReport validate_mutual_action(MutualAction const& a);
  MutualAction     trivial_mutual_action(FinGroup const& m, FinGroup const& n);
  // Actions through P of two crossed P-modules.
  MutualAction mutual_action(XModTable const& mu, XModTable const& nu);

  // Generators t(m, n) for m, n not the identity; t(1, n) = t(m, 1) = 1 are
  // dropped from the relators
  //   t(m m', n) = t(m, n) t(m.m', m.n),   t(m, n n') = t(n.m, n.n') t(m, n).
  struct TensorPresentation {
    GroupPresentation                           group;
    std::vector<std::pair<Elt, Elt>>            pairs;  // generator -> (m, n)
    std::vector<std::string>                    names;
    // images of t(m, n): n.m m^-1 in M and n m.n^-1 in N
    std::vector<Elt>                            to_m, to_n;
  };
  TensorPresentation tensor_presentation(MutualAction const& a);
  TensorPresentation universal_xsq_presentation(XModTable const& mu, XModTable const& nu);

  struct TensorStructure {
    std::size_t       generators = 0;
    std::size_t       relators   = 0;
    AbelianInvariants abelianization;
  };
  TensorStructure tensor_structure(TensorPresentation const& t);

  struct TensorTable {
    FinGroup         group;
    std::vector<Elt> generator_element;
  };
  // nullopt when enumeration does not close within b.max_steps. The result
  // is checked against every relator. Throws InputError for incompatible
  // actions.
  std::optional<TensorTable> tensor_bounded(MutualAction const& a, RewriteBound const& b);

  // For trivial actions M (x) N = M^ab (x)_Z N^ab: the sum of Z/gcd over
  // pairs of cyclic factors.
  AbelianInvariants abelian_tensor_oracle(FinGroup const& m, FinGroup const& n);

  // Abelian invariants of a finite group.
  AbelianInvariants group_abelianization(FinGroup const& g);

}  // namespace cofib

#endif  // COFIB_XSQ_HPP_
