#ifndef COFIB_MODULE_HPP_
#define COFIB_MODULE_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "cofib/groupoid.hpp"
#include "cofib/linalg.hpp"
#include "cofib/presented.hpp"

namespace cofib {

  // Z^gens / rowspace(rels).
  struct AbPresentation {
    std::size_t gens = 0;
    IntMatrix   rels;

    friend bool operator==(AbPresentation const&, AbPresentation const&) = default;
  };

  // A right module over a finite groupoid. action[p] for p: x -> y is a
  // gens(x) x gens(y) matrix; row i is the image of generator i, so
  // m^p = m A_p and A_{pq} = A_p A_q modulo relations.
  struct GpdModule {
    FinGroupoid                 base;
    std::vector<AbPresentation> groups;  // per object
    std::vector<IntMatrix>      action;  // per arrow
  };

  ValidationReport validate_module(GpdModule const& m);
  GpdModule        zero_module(FinGroupoid const& base);
  // A module over a one-object groupoid; action given per group element.
  GpdModule group_module(FinGroup const& g, AbPresentation a, std::vector<IntMatrix> action);
  // Fills missing (empty) action matrices by composing along generators.
  void complete_action(GpdModule& m);

  // M(x) = N(v x), A_p = B_{v p}.
  GpdModule module_pullback(FinGroupoid const& g, GpdMorphism const& v, GpdModule const& n);

  using ModuleInvariants = std::vector<AbelianInvariants>;  // per object
  ModuleInvariants module_invariants(GpdModule const& m);

  ////////////////////////////////////////////////////////////////////////
  // Presentations
  ////////////////////////////////////////////////////////////////////////

  struct ModGenerator {
    std::string id;
    std::size_t at = 0;
  };

  // coef * gen^act, where act is a base word starting at the generator's object.
  struct ModTerm {
    Int         coef = 0;
    std::size_t gen  = 0;
    PgWord      act;
  };
  // Terms of one relation all end at the same object.
  using ModRelation = std::vector<ModTerm>;

  struct ModulePres {
    Base                      base;
    std::vector<ModGenerator> generators;
    std::vector<ModRelation>  relations;
  };

  ValidationReport validate_module_pres(ModulePres const& p);

  // Generators "x:i", the relations of each M(x), and for each generating
  // arrow p: x -> y and generator i at x the relation
  // sum_j A_p[i][j] (j, 1_y) - (i, p) = 0.
  ModulePres to_pres(GpdModule const& m);

  // Generators move along f on objects; actions are mapped through f.
  ModulePres module_pres_induce(ModulePres const& m, Base const& target, BaseMorphism const& f);
  // v_* M over a finite target. The unit sends generator k to generator k.
  ModulePres module_induce(GpdMorphism const& v, FinGroupoid const& target, GpdModule const& m);

  // The module induced along the discrete inclusion t: D(B) -> Q of ZB.
  ModulePres free_module(std::vector<std::string> const& b,
                         std::vector<std::size_t> const& t,
                         Base const&                     q);

  struct StructuralReport {
    std::size_t generators = 0;
    std::size_t relations  = 0;
    bool        free       = false;  // no relations
  };
  StructuralReport structural_report(ModulePres const& p);

  // Expansion over a finite base: generators (k, q) for every arrow q out of
  // the object of generator k; (k, q)^p = (k, qp).
  struct ExpandedModule {
    GpdModule                             module;
    std::vector<std::vector<std::size_t>> coordinate;  // generator, arrow -> index at tgt
    std::vector<std::size_t>              at;          // generator -> object
  };
  // Throws InfiniteBase when the base is only presented.
  ExpandedModule to_module(ModulePres const& p);
  ModuleInvariants module_simplify(ModulePres const& p);

  ////////////////////////////////////////////////////////////////////////
  // Oracles and morphisms
  ////////////////////////////////////////////////////////////////////////

  // M tensor_{ZG} ZH for a G-module M (action per element) along f: G -> H,
  // assembled directly as a relation matrix over the basis e_i (x) h.
  AbelianInvariants tensor_oracle(FinGroup const&               g,
                                  AbPresentation const&         m,
                                  std::vector<IntMatrix> const& action,
                                  FinGroup const&               h,
                                  GroupHom const&               f);

  // Per object x of M, a gens(M x) x gens(N v(x)) matrix.
  struct ModuleMorphism {
    std::vector<IntMatrix> on_objects;
  };

  ValidationReport validate_module_morphism(GpdModule const&      m,
                                            GpdModule const&      n,
                                            GpdMorphism const&    v,
                                            ModuleMorphism const& f);
  // Every morphism M -> N over v; N must have finite fibres.
  void for_each_module_morphism(GpdModule const&                                  m,
                                GpdModule const&                                  n,
                                GpdMorphism const&                                v,
                                std::function<bool(ModuleMorphism const&)> const& visit);
  bool same_module_morphism(GpdModule const& n, GpdMorphism const& v, ModuleMorphism const& f,
                            ModuleMorphism const& g);
  // f: M -> N over v, then g: N -> L over w.
  ModuleMorphism compose(ModuleMorphism const& f, GpdMorphism const& v, ModuleMorphism const& g,
                         GpdMorphism const& w, GpdModule const& l);

  // The unit M -> v*(v_* M) on generators: generator i at x goes to (i, 1).
  ModuleMorphism induce_unit(GpdModule const& m, ExpandedModule const& induced);

}  // namespace cofib

#endif  // COFIB_MODULE_HPP_
