#ifndef COFIB_XMOD_HPP_
#define COFIB_XMOD_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cofib/group.hpp"
#include "cofib/groupoid.hpp"
#include "cofib/module.hpp"
#include "cofib/presented.hpp"

namespace cofib {

  // Fibre groups in table form are limited to this order.
  inline constexpr std::size_t kMaxFibreOrder = 64;

  // A crossed module over a finite groupoid. mu[x] sends elements of M(x) to
  // loops at x; action[p] for p: x -> y sends m to m^p.
  struct XModTable {
    FinGroupoid                   base;
    std::vector<FinGroup>         fibres;
    std::vector<std::vector<std::size_t>> mu;
    std::vector<std::vector<Elt>> action;
  };

  ValidationReport validate_xmod(XModTable const& x);

  XModTable zero_xmod(FinGroupoid const& base);
  // id: G -> G with conjugation, over the one-object groupoid of G.
  XModTable identity_xmod(FinGroup const& g);
  // A crossed module over a one-object groupoid; mu as a homomorphism and
  // action[p] an automorphism of M per element p of P.
  XModTable group_xmod(FinGroup const& m, FinGroup const& p, GroupHom const& mu,
                       std::vector<GroupHom> const& action);

  // M(x) = {(p, n) : p in P(x,x), f p = nu n}, mu(p, n) = p,
  // (p, n)^a = (a^-1 p a, n^{f a}).
  XModTable xmod_pullback(FinGroupoid const& p, GpdMorphism const& f, XModTable const& n);

  // Per object x of M a homomorphism M(x) -> N(f x).
  struct XModMorphism {
    std::vector<GroupHom> on_objects;
  };
  ValidationReport validate_xmod_morphism(XModTable const& m, XModTable const& n,
                                          GpdMorphism const& f, XModMorphism const& t);
  void for_each_xmod_morphism(XModTable const& m, XModTable const& n, GpdMorphism const& f,
                              std::function<bool(XModMorphism const&)> const& visit);
  std::size_t count_xmod_morphisms(XModTable const& m, XModTable const& n, GpdMorphism const& f);
  // An isomorphism over the identity of a common base.
  std::optional<XModMorphism> find_xmod_isomorphism(XModTable const& m, XModTable const& n);

  ////////////////////////////////////////////////////////////////////////
  // Presentations
  ////////////////////////////////////////////////////////////////////////

  struct XGenerator {
    std::string id;
    std::size_t at = 0;
    PgWord      boundary;  // loop at `at`
  };

  // (gen^act)^{+-1}; act starts at the generator's object.
  struct XLetter {
    std::size_t gen = 0;
    PgWord      act;
    bool        inverse = false;
  };
  // Letters of one relator all end at the same object.
  using XRelator = std::vector<XLetter>;

  // The crossed module generated by the generators subject to the relators;
  // Peiffer relations are implicit.
  struct FpXMod {
    Base                    base;
    std::vector<XGenerator> generators;
    std::vector<XRelator>   relators;
  };

  ValidationReport validate_fp_xmod(FpXMod const& x);
  // Each relator must have trivial boundary; exact over finite bases.
  Decision check_relator_boundaries(FpXMod const& x, RewriteBound const& b);

  // Generating sets of the fibres, their Cayley relators, and operator
  // relators (s, p) = word(s^p) for base generators p.
  FpXMod to_fp(XModTable const& m);

  FpXMod fp_xmod_induce(FpXMod const& m, Base const& target, BaseMorphism const& f);
  // f_* M over a finite target; the unit sends generator k to generator k.
  FpXMod xmod_induce(GpdMorphism const& f, FinGroupoid const& target, XModTable const& m);

  struct XRelatorSpec {
    std::string id;
    std::size_t at = 0;  // base point
    PgWord      word;    // loop at `at`
  };
  // id: F1(R) -> F2(R), the free crossed module on the loops of F2(R).
  FpXMod free_identity_xmod(std::vector<std::string> const& r);
  // Induced from id: F1(R) -> F2(R) along the morphism F2(R) -> P given by w.
  FpXMod free_xmod(std::vector<XRelatorSpec> const& w, Base const& p);

  // Fibre at y of the expansion over a finite base: generators (k, q) for
  // arrows q: at(k) -> y; relators translated along arrows; Peiffer relators
  // for all pairs of generators.
  struct ExpandedFibre {
    std::size_t                          object = 0;
    GroupPresentation                    group;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // generator index -> (k, q)
    std::size_t                          peiffer_begin = 0;  // first Peiffer relator
  };
  ExpandedFibre expand_fibre(FpXMod const& x, std::size_t y, RewriteBound const& b);
  // The boundary of a word in the expanded generators, as a base arrow.
  std::size_t expanded_boundary(FpXMod const& x, ExpandedFibre const& e, GroupWord const& w);

  struct RealizedXMod {
    XModTable                             table;
    std::vector<std::vector<Elt>>         generator_element;  // k, arrow q -> element of M(tgt q)
  };
  // nullopt when coset enumeration does not close within the budget. Throws
  // InfiniteBase over presented bases and TooLarge past kMaxFibreOrder.
  std::optional<RealizedXMod> bounded_realize(FpXMod const& x, RewriteBound const& b);

  // Morphisms from the presented crossed module into a table over the same
  // base: generator images with the right boundary satisfying the relators.
  void for_each_fp_morphism(FpXMod const& x, XModTable const& n,
                            std::function<bool(std::vector<Elt> const&)> const& visit);
  std::size_t count_fp_morphisms(FpXMod const& x, XModTable const& n);

  // The abelianization as a module over the cokernel groupoid of the
  // boundary. Over a finite base the cokernel is a quotient table, otherwise
  // the boundaries become relators of the presented base.
  struct XModAbelianization {
    ModulePres              module;
    std::optional<Quotient> cokernel;  // set over finite bases
  };
  XModAbelianization peiffer_abelianize(FpXMod const& x);

  // Restriction to x0 of a crossed module over a connected base, with the
  // retraction s_x(m) = m^{tau(x)^-1} over r.
  struct XModRetraction {
    XModTable                     vertex;  // over the one-object groupoid of P(x0)
    Retraction                    base;
    std::vector<std::vector<Elt>> s;       // object, element -> element of M(x0)
  };
  XModRetraction retract_xmod_to_vertex(XModTable const& x, std::size_t x0);
  // The same transport on presentations over a finite connected base.
  FpXMod retract_fp_to_vertex(FpXMod const& x, std::size_t x0);

  ////////////////////////////////////////////////////////////////////////
  // Catalog
  ////////////////////////////////////////////////////////////////////////

  struct CatalogXMod {
    std::string name;
    std::string m_name;
    std::string p_name;
    XModTable   xmod;
  };
  // Crossed modules M -> P over one object with M, P library groups and
  // |M| |P| <= max_product, one per isomorphism class.
  std::vector<CatalogXMod> const& xmod_catalog(std::size_t max_product);

}  // namespace cofib

#endif  // COFIB_XMOD_HPP_
