#ifndef COFIB_COLIMIT_HPP_
#define COFIB_COLIMIT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cofib/groupoid.hpp"
#include "cofib/module.hpp"
#include "cofib/presented.hpp"
#include "cofib/xmod.hpp"

namespace cofib {

  struct Shape {
    std::size_t                                      nodes = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
  };

  struct ShapeComponents {
    std::vector<std::size_t> of;  // node -> component
    std::size_t              count = 0;
    bool connected() const noexcept {
      return count == 1;
    }
  };
  ShapeComponents shape_components(Shape const& s);

  struct GpdEdge {
    std::size_t src = 0;
    std::size_t tgt = 0;
    GpdMorphism map;
  };
  struct GpdDiagram {
    std::vector<std::string> names;
    std::vector<FinGroupoid> nodes;
    std::vector<GpdEdge>     edges;
  };

  struct ModEdge {
    std::size_t    src = 0;
    std::size_t    tgt = 0;
    GpdMorphism    base;
    ModuleMorphism map;
  };
  struct ModDiagram {
    std::vector<std::string> names;
    std::vector<GpdModule>   nodes;
    std::vector<ModEdge>     edges;
  };

  struct XModEdge {
    std::size_t  src = 0;
    std::size_t  tgt = 0;
    GpdMorphism  base;
    XModMorphism map;
  };
  struct XModDiagram {
    std::vector<std::string> names;
    std::vector<XModTable>   nodes;
    std::vector<XModEdge>    edges;
  };

  Shape      shape_of(GpdDiagram const& d);
  GpdDiagram base_diagram(ModDiagram const& d);
  GpdDiagram base_diagram(XModDiagram const& d);

  ValidationReport validate_diagram(GpdDiagram const& d);
  ValidationReport validate_diagram(ModDiagram const& d);
  ValidationReport validate_diagram(XModDiagram const& d);

  ////////////////////////////////////////////////////////////////////////
  // Groupoids
  ////////////////////////////////////////////////////////////////////////

  struct GpdColimit {
    std::vector<std::string> objects;      // I, named by least members
    std::vector<ObjMap>      object_legs;  // node -> Ob(node) -> I
    // Fibre coproduct of the U_{u_c}(T c) over I with edge relators; node c
    // contributes generators "name.gen".
    PresentedGroupoid        pres;
    std::vector<std::size_t> generator_offset;  // node -> first generator
    Base                     base;              // realized when finite
    std::vector<BaseMorphism> legs;             // Base::finite(node) -> base
    std::vector<GpdMorphism> finite_legs;       // set when base is finite
    ValidationReport         functoriality;
  };

  // Throws InputError on a disconnected or empty shape.
  GpdColimit colimit_gpd(GpdDiagram const& d, RewriteBound const& b);

  ////////////////////////////////////////////////////////////////////////
  // Modules and crossed modules
  ////////////////////////////////////////////////////////////////////////

  struct ModColimit {
    GpdColimit               base;
    ModulePres               module;
    std::vector<std::size_t> generator_offset;  // node -> first generator
  };
  ModColimit colimit_mod(ModDiagram const& d, RewriteBound const& b);

  struct XModColimit {
    GpdColimit               base;
    FpXMod                   xmod;
    std::vector<std::size_t> generator_offset;
  };
  XModColimit colimit_xmod(XModDiagram const& d, RewriteBound const& b);

  ////////////////////////////////////////////////////////////////////////
  // Cocartesian morphisms and pushouts
  ////////////////////////////////////////////////////////////////////////

  // theta': Z -> X' over v, X' on the objects of J.
  struct BatteryItem {
    FinGroupoid target;
    GpdMorphism theta;
  };
  struct CocartesianCert {
    bool                     pass = true;
    std::size_t              checked = 0;
    std::vector<std::size_t> factorizations;  // per battery item
    std::optional<std::size_t> witness;       // first failing item
  };
  // psi: Z -> Y over v given on the generators of Base::finite(z). Counts the
  // psi': Y -> X' over the identity of J with psi' psi = theta'. Throws
  // InputError if a battery item is not over v.
  CocartesianCert check_cocartesian(FinGroupoid const& z, Base const& y, BaseMorphism const& psi,
                                    std::vector<BatteryItem> const& battery);
  // Every theta': Z -> X' over v for X' in groupoid_catalog(J, max_arrows).
  std::vector<BatteryItem> cocartesian_battery(FinGroupoid const&              z,
                                               std::vector<std::string> const& j,
                                               ObjMap const& v, std::size_t max_arrows);

  // The span D(J) <- D(K) -> Z with D(K) -> D(J) given by u.
  GpdDiagram  discrete_span(std::vector<std::string> const& j, ObjMap const& u,
                            FinGroupoid const& z);
  ModDiagram  discrete_span(std::vector<std::string> const& j, ObjMap const& u,
                            GpdModule const& z);
  XModDiagram discrete_span(std::vector<std::string> const& j, ObjMap const& u,
                            XModTable const& z);

  // The pushout of the span, with the I -> J renaming read off the D(J) leg.
  struct GpdPushout {
    GpdColimit  colimit;
    ObjMap      to_j;  // object of I -> object of J
  };
  GpdPushout pushout_along_discrete(std::vector<std::string> const& j, ObjMap const& u,
                                    FinGroupoid const& z, RewriteBound const& b);

  ////////////////////////////////////////////////////////////////////////
  // Invariants used for comparison
  ////////////////////////////////////////////////////////////////////////

  // Per object: the coinvariants of the module on its component, i.e. the
  // quotient with all actions forgotten.
  std::vector<AbelianInvariants> module_coinvariants(ModulePres const& p);

  // Per object, the abelianized vertex group.
  std::vector<AbelianInvariants> object_invariants(Base const& b);

  ////////////////////////////////////////////////////////////////////////
  // Fibre against total colimits
  ////////////////////////////////////////////////////////////////////////

  struct FibreTotalReport {
    bool                           connected = true;
    bool                           agree     = false;
    std::string                    detail;
    // the colimit in the fibre over the common objects
    std::size_t                    fibre_objects = 0;
    std::optional<std::size_t>     fibre_arrows;  // when finite
    std::vector<AbelianInvariants> fibre_invariants;
    // the colimit in Gpd
    std::size_t                    total_objects = 0;
    std::optional<std::size_t>     total_arrows;
    std::vector<AbelianInvariants> total_invariants;
  };
  // All nodes share one object set and every edge is the identity on objects.
  FibreTotalReport fibre_vs_total(GpdDiagram const& d, RewriteBound const& b);

}  // namespace cofib

#endif  // COFIB_COLIMIT_HPP_
