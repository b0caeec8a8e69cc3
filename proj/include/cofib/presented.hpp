#ifndef COFIB_PRESENTED_HPP_
#define COFIB_PRESENTED_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cofib/groupoid.hpp"
#include "cofib/linalg.hpp"
#include "cofib/words.hpp"

namespace cofib {

  struct PgGenerator {
    std::string id;
    std::size_t src = 0;
    std::size_t tgt = 0;

    friend bool operator==(PgGenerator const&, PgGenerator const&) = default;
  };

  // A path in the free groupoid on the generators; letters as in words.hpp.
  // The endpoints are stored so that empty words know where they live.
  struct PgWord {
    std::size_t src = 0;
    std::size_t tgt = 0;
    GroupWord   letters;

    friend bool operator==(PgWord const&, PgWord const&) = default;
  };

  struct PresentedGroupoid {
    std::vector<std::string> objects;
    std::vector<PgGenerator> generators;
    std::vector<PgWord>      relators;  // closed paths

    friend bool operator==(PresentedGroupoid const&, PresentedGroupoid const&) = default;
  };

  struct RewriteBound {
    std::size_t max_steps       = 10000;  // coset definitions
    std::size_t max_word_length = 64;
    std::size_t max_enumeration = 10000;
  };

  enum class Decision { Equal, Distinct, Unknown };
  char const* to_string(Decision d);

  ValidationReport validate_pg(PresentedGroupoid const& p);
  // Checks endpoint consistency of the letters.
  bool   well_formed(PresentedGroupoid const& p, PgWord const& w);
  PgWord pg_identity(std::size_t x);
  PgWord pg_generator(PresentedGroupoid const& p, std::size_t k, bool inverse = false);
  PgWord pg_compose(PgWord const& a, PgWord const& b);
  PgWord pg_inverse(PgWord const& w);
  std::string to_string(PresentedGroupoid const& p, PgWord const& w);

  PresentedGroupoid pg_free(std::vector<std::string> objects, std::vector<PgGenerator> gens);

  // Generators are the small generating set of groupoid_generators, relators
  // the Cayley relators of the root vertex groups.
  PresentedGroupoid presentation_of(FinGroupoid const& g);

  // Vertex-group presentation of the component of `object`: breadth-first
  // spanning tree from the least object (lexicographically) of the component;
  // tree generators map to the empty word.
  struct VertexPresentation {
    std::size_t              base;
    std::vector<std::size_t> objects;      // objects of the component
    GroupPresentation        group;
    std::vector<GroupWord>   generator;    // P generator -> group word
    std::vector<PgWord>      tree;         // object -> path base -> x
  };
  VertexPresentation vertex_presentation(PresentedGroupoid const& p, std::size_t object);
  GroupWord          to_vertex_word(VertexPresentation const& v, PgWord const& w);

  AbelianInvariants pg_abelian_invariants(PresentedGroupoid const& p, std::size_t object);

  Decision pg_word_problem_bounded(PresentedGroupoid const& p,
                                   PgWord const&            w1,
                                   PgWord const&            w2,
                                   RewriteBound const&      b);

  struct Realization {
    FinGroupoid              groupoid;
    std::vector<std::size_t> generator_arrow;  // P generator -> arrow
  };
  // Coset enumeration per component; nullopt if any component does not
  // close within the budget.
  std::optional<Realization> pg_realize(PresentedGroupoid const& p, RewriteBound const& b);

  // Generator images into a finite groupoid over a fixed object map that
  // satisfy every relator.
  void for_each_pg_morphism(PresentedGroupoid const&                                   p,
                            FinGroupoid const&                                         h,
                            ObjMap const&                                              on_objects,
                            std::function<bool(std::vector<std::size_t> const&)> const& visit);
  std::size_t evaluate_in(FinGroupoid const&              h,
                          ObjMap const&                   on_objects,
                          std::vector<std::size_t> const& gen_images,
                          PgWord const&                   w);

  ////////////////////////////////////////////////////////////////////////
  // Bases: a presentation, with a table when finite
  ////////////////////////////////////////////////////////////////////////

  class Base {
   public:
    Base() = default;
    static Base finite(FinGroupoid const& g);
    static Base presented(PresentedGroupoid p);
    // A presentation whose realization is known.
    static Base realized(PresentedGroupoid p, Realization r);

    PresentedGroupoid const& pres() const noexcept {
      return _pres;
    }
    bool finite() const noexcept {
      return _table.has_value();
    }
    // Throws InfiniteBase when not finite.
    FinGroupoid const& table() const;
    std::size_t        generator_arrow(std::size_t k) const;
    std::size_t        evaluate(PgWord const& w) const;
    PgWord             arrow_word(std::size_t a) const;

   private:
    PresentedGroupoid          _pres;
    std::optional<FinGroupoid> _table;
    std::vector<std::size_t>   _gen_arrow;
    std::vector<PgWord>        _from_root;  // arrow out of its component root -> word
    std::vector<std::size_t>   _root_arrow;  // object -> some arrow root -> x
  };

  // A morphism of presented groupoids given on generators.
  struct BaseMorphism {
    ObjMap              on_objects;
    std::vector<PgWord> on_generators;
  };
  PgWord       apply(BaseMorphism const& f, PgWord const& w);
  BaseMorphism base_morphism(Base const& source, Base const& target, GpdMorphism const& f);
  BaseMorphism compose(BaseMorphism const& f, BaseMorphism const& g);
  BaseMorphism identity_base_morphism(PresentedGroupoid const& p);
  // Relators map to identities; exact for finite targets, bounded otherwise.
  Decision check_base_morphism(Base const& source, Base const& target, BaseMorphism const& f,
                               RewriteBound const& b);

  ////////////////////////////////////////////////////////////////////////
  // Universal morphisms
  ////////////////////////////////////////////////////////////////////////

  // A reduced word of base arrows; endpoints are objects of J.
  struct GpdWord {
    std::size_t              src = 0;
    std::size_t              tgt = 0;
    std::vector<std::size_t> letters;

    friend bool operator==(GpdWord const&, GpdWord const&) = default;
    friend auto operator<=>(GpdWord const&, GpdWord const&) = default;
  };

  class WordGroupoid {
   public:
    WordGroupoid(FinGroupoid base, std::vector<std::string> objects, ObjMap u);

    FinGroupoid const& base() const noexcept {
      return _base;
    }
    std::vector<std::string> const& objects() const noexcept {
      return _objects;
    }
    ObjMap const& u() const noexcept {
      return _u;
    }

    GpdWord identity(std::size_t j) const;
    // [g], or the empty word if g is an identity.
    GpdWord unit(std::size_t g) const;
    GpdWord compose(GpdWord const& a, GpdWord const& b) const;
    GpdWord inverse(GpdWord const& w) const;
    // Reduces an arbitrary adjacent sequence of base arrows.
    GpdWord          reduce(std::size_t src, std::size_t tgt, std::vector<std::size_t> const& letters) const;
    ValidationReport validate_word(GpdWord const& w) const;

    // Reduced words j -> k in order of length, then lexicographically.
    std::vector<GpdWord> enumerate(std::size_t j, std::size_t k, std::size_t max_length,
                                   std::size_t cap) const;

    PresentedGroupoid const& presentation() const noexcept {
      return _pres;
    }
    // The unit as a morphism of presentations.
    BaseMorphism unit_morphism() const;
    PgWord       to_pg(GpdWord const& w) const;
    std::string  to_string(GpdWord const& w) const;

   private:
    void push(std::vector<std::size_t>& stack, std::size_t g) const;

    FinGroupoid              _base;
    std::vector<std::string> _objects;
    ObjMap                   _u;
    PresentedGroupoid        _pres;
    Base                     _base_pres;
  };

  WordGroupoid universal_morphism(std::vector<std::string> const& j_objects,
                                  ObjMap const&                   u,
                                  FinGroupoid const&              g);

}  // namespace cofib

#endif  // COFIB_PRESENTED_HPP_
