#ifndef COFIB_GROUPOID_HPP_
#define COFIB_GROUPOID_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cofib/error.hpp"
#include "cofib/group.hpp"

namespace cofib {

  struct Arrow {
    std::string id;
    std::size_t src = 0;
    std::size_t tgt = 0;

    friend bool operator==(Arrow const&, Arrow const&) = default;
  };

  // A finite groupoid as an explicit table. Composition is diagrammatic:
  // for a: x -> y and b: y -> z, compose[a][b] = ab: x -> z; other entries are
  // kNone.
  struct FinGroupoid {
    std::vector<std::string>              objects;
    std::vector<Arrow>                    arrows;
    std::vector<std::vector<std::size_t>> compose;
    std::vector<std::size_t>              identity;  // per object
    std::vector<std::size_t>              inverse;   // per arrow

    std::size_t mul(std::size_t a, std::size_t b) const {
      return compose[a][b];
    }
    std::size_t src(std::size_t a) const {
      return arrows[a].src;
    }
    std::size_t tgt(std::size_t a) const {
      return arrows[a].tgt;
    }
    bool is_identity(std::size_t a) const {
      return identity[arrows[a].src] == a;
    }
    // Arrows x -> y in index order.
    std::vector<std::size_t> hom(std::size_t x, std::size_t y) const;

    std::optional<std::size_t> find_object(std::string_view name) const;
    std::optional<std::size_t> find_arrow(std::string_view id) const;
    std::size_t                object_index(std::string_view name) const;
    std::size_t                arrow_index(std::string_view id) const;

    friend bool operator==(FinGroupoid const&, FinGroupoid const&) = default;
  };

  // Structure-preserving map; on_objects and on_arrows are index maps.
  struct GpdMorphism {
    std::vector<std::size_t> on_objects;
    std::vector<std::size_t> on_arrows;

    friend bool operator==(GpdMorphism const&, GpdMorphism const&) = default;
  };

  using ObjMap = std::vector<std::size_t>;

  // Per-arrow membership; only vertex arrows may be members.
  struct NormalSubgroupoid {
    std::vector<bool> member;
  };

  ValidationReport validate_groupoid(FinGroupoid const& g);
  ValidationReport validate_morphism(FinGroupoid const& g,
                                     FinGroupoid const& h,
                                     GpdMorphism const& f);

  // Builds a groupoid from arrows and a composition function on composable
  // pairs; identities and inverses are derived. Throws InputError if the
  // result is not a groupoid.
  FinGroupoid make_groupoid(std::vector<std::string>                               objects,
                            std::vector<Arrow>                                     arrows,
                            std::function<std::size_t(std::size_t, std::size_t)> const& mul);

  // Sorts objects and arrows lexicographically. Returns the permutation
  // applied as old index -> new index for objects and arrows.
  struct Relabeling {
    std::vector<std::size_t> objects;
    std::vector<std::size_t> arrows;
  };
  Relabeling canonicalize(FinGroupoid& g);

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  FinGroupoid discrete_groupoid(std::vector<std::string> const& objects);
  // One arrow "x>y" for each ordered pair.
  FinGroupoid codiscrete_groupoid(std::vector<std::string> const& objects);
  // One object; arrow ids are the element names.
  FinGroupoid group_groupoid(FinGroup const& g, std::string const& object = "*");
  // Codiscrete times a group; arrow ids "(x,g,y)".
  FinGroupoid connected_groupoid(std::vector<std::string> const& objects, FinGroup const& g);

  FinGroupoid coproduct_gpd(std::vector<FinGroupoid> const& parts);

  struct Pullback {
    FinGroupoid groupoid;
    GpdMorphism projection;
  };
  // H(j, j') = {(j, g, j') : g in G(uj, uj')}.
  Pullback pullback_groupoid(std::vector<std::string> const& j_objects,
                             ObjMap const&                   u,
                             FinGroupoid const&              g);

  GpdMorphism identity_morphism(FinGroupoid const& g);
  // f then g.
  GpdMorphism compose_morphisms(GpdMorphism const& f, GpdMorphism const& g);

  // The unique morphism D(K) -> X over u; throws Error if enumeration over u
  // does not find exactly one.
  GpdMorphism initiality_check(std::vector<std::string> const& k,
                               FinGroupoid const&              x,
                               ObjMap const&                   u);

  ////////////////////////////////////////////////////////////////////////
  // Structure
  ////////////////////////////////////////////////////////////////////////

  struct Components {
    std::vector<std::size_t>              of;      // object -> component
    std::vector<std::vector<std::size_t>> blocks;  // sorted, by least member
  };
  Components connected_components(FinGroupoid const& g);

  struct VertexGroup {
    FinGroup                 group;
    std::vector<std::size_t> arrow_of;    // element -> arrow
    std::vector<Elt>         element_of;  // arrow -> element or kNone
  };
  VertexGroup vertex_group(FinGroupoid const& g, std::size_t x);

  // A small generating set: in each component the least object is the root,
  // tree[x] is the least arrow root -> x, and the vertex group at the root is
  // generated greedily.
  struct GroupoidGenerators {
    std::vector<std::size_t>              root_of;  // object -> root object
    std::vector<std::size_t>              tree;     // object -> arrow root -> x
    std::vector<VertexGroup>              vertex;   // per object (filled at roots)
    std::vector<std::vector<Elt>>         vertex_gens;   // per object (roots)
    std::vector<std::vector<GroupWord>>   vertex_words;  // per object (roots)
    std::vector<std::size_t>              gens;     // generating arrows
    std::vector<std::size_t>              gen_of_tree;  // object -> gen index or kNone
    std::vector<std::vector<std::size_t>> gen_of_vertex;  // root -> vertex gen -> gen index
  };
  GroupoidGenerators groupoid_generators(FinGroupoid const& g);
  // The arrow as a word in the generators (letters as in words.hpp).
  GroupWord arrow_word(FinGroupoid const& g, GroupoidGenerators const& gens, std::size_t a);

  struct Retraction {
    std::size_t              base;
    std::vector<std::size_t> tau;  // object -> arrow base -> x
    VertexGroup              vertex;
    std::vector<Elt>         r;    // arrow -> element of the vertex group
  };
  // r(c) = tau(x) c tau(y)^-1 for c: x -> y. Throws InputError if g is not
  // connected.
  Retraction spanning_tree_retraction(FinGroupoid const& g, std::size_t x0);
  // tau(x)^-1 r(c) tau(y)
  std::size_t reconstruct(FinGroupoid const& g, Retraction const& r, std::size_t c);

  NormalSubgroupoid normal_closure(FinGroupoid const& p, std::vector<std::size_t> const& r);
  NormalSubgroupoid trivial_subgroupoid(FinGroupoid const& p);
  ValidationReport  validate_normal(FinGroupoid const& p, NormalSubgroupoid const& n);

  struct Quotient {
    FinGroupoid groupoid;
    GpdMorphism projection;
  };
  Quotient quotient_groupoid(FinGroupoid const& p, NormalSubgroupoid const& n);

  // The wide subgroupoid generated by the given arrows, with its inclusion.
  struct Subgroupoid {
    FinGroupoid groupoid;
    GpdMorphism inclusion;
  };
  Subgroupoid subgroupoid_generated(FinGroupoid const& g, std::vector<std::size_t> const& arrows);

  ////////////////////////////////////////////////////////////////////////
  // Morphism search
  ////////////////////////////////////////////////////////////////////////

  // Every morphism G -> H with the given object map; visit returns false to
  // stop.
  void for_each_morphism(FinGroupoid const&                             g,
                         FinGroupoid const&                             h,
                         ObjMap const&                                  on_objects,
                         std::function<bool(GpdMorphism const&)> const& visit);

  std::vector<GpdMorphism> morphisms_over(FinGroupoid const& g,
                                          FinGroupoid const& h,
                                          ObjMap const&      on_objects);

  // Throws TooLarge beyond 16 objects or 256 arrows.
  std::optional<GpdMorphism> find_groupoid_isomorphism(FinGroupoid const& g,
                                                       FinGroupoid const& h);

  // Groupoids over the given objects: a connected groupoid with a library
  // vertex group on each block of each set partition, at most max_arrows
  // arrows.
  std::vector<FinGroupoid> groupoid_catalog(std::vector<std::string> const& objects,
                                            std::size_t                     max_arrows);

}  // namespace cofib

#endif  // COFIB_GROUPOID_HPP_
