#ifndef COFIB_GROUP_HPP_
#define COFIB_GROUP_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cofib/error.hpp"
#include "cofib/words.hpp"

namespace cofib {

  using Elt = std::size_t;

  // A finite group stored as a full multiplication table. Element names are
  // only used for serialization and diagnostics.
  class FinGroup {
   public:
    // The trivial group.
    FinGroup();

    // Throws InputError unless the table is a group table.
    FinGroup(std::vector<std::string> names, std::vector<std::vector<Elt>> table);

    std::size_t order() const noexcept {
      return _table.size();
    }
    Elt identity() const noexcept {
      return _identity;
    }
    Elt mul(Elt a, Elt b) const {
      return _table[a][b];
    }
    Elt inv(Elt a) const {
      return _inverse[a];
    }
    // a^-1 b a
    Elt conj(Elt b, Elt a) const {
      return mul(mul(inv(a), b), a);
    }
    Elt pow(Elt a, long long k) const;
    std::size_t element_order(Elt a) const;

    std::string const& name(Elt a) const {
      return _names[a];
    }
    std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    std::vector<std::vector<Elt>> const& table() const noexcept {
      return _table;
    }
    std::optional<Elt> find(std::string_view name) const;

    bool is_abelian() const;

    // Evaluates a word given images of the generators.
    Elt evaluate(GroupWord const& w, std::vector<Elt> const& gens) const;

    friend bool operator==(FinGroup const& a, FinGroup const& b) {
      return a._table == b._table;
    }

   private:
    std::vector<std::string>        _names;
    std::vector<std::vector<Elt>>   _table;
    std::vector<Elt>                _inverse;
    Elt                             _identity = 0;
  };

  // Checks the group axioms on an arbitrary table.
  ValidationReport validate_group_table(std::vector<std::vector<Elt>> const& table);

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  FinGroup trivial_group();
  FinGroup cyclic_group(std::size_t n);
  FinGroup direct_product(FinGroup const& a, FinGroup const& b);
  // Order 2n.
  FinGroup dihedral_group(std::size_t n);
  FinGroup quaternion_group();
  FinGroup symmetric_group(std::size_t n);

  // Closure of permutations of {0, ..., degree-1}; element names are shortlex
  // words in the generators (a, b, c, ...), with "1" for the identity.
  FinGroup group_from_permutations(std::vector<std::vector<std::size_t>> const& gens);

  // Renames the elements by shortlex words in a greedy generating set.
  FinGroup with_word_names(FinGroup const& g);

  struct LibraryGroup {
    std::string name;
    FinGroup    group;
  };

  // All groups of order <= max_order (max_order <= 8) up to isomorphism:
  // C1, C2, C3, C4, C2xC2, C5, C6, S3, C7, C8, C4xC2, C2xC2xC2, D8, Q8.
  std::vector<LibraryGroup> const& small_groups();
  FinGroup const&                  library_group(std::string_view name);

  ////////////////////////////////////////////////////////////////////////
  // Subgroups, generators, words
  ////////////////////////////////////////////////////////////////////////

  // Membership mask of the subgroup generated by gens.
  std::vector<bool> subgroup_generated(FinGroup const& g, std::vector<Elt> const& gens);

  // Deterministic greedy generating set (smallest index not yet generated).
  std::vector<Elt> generating_set(FinGroup const& g);

  // Shortlex-shortest word for each element in the given generators.
  std::vector<GroupWord> cayley_words(FinGroup const& g, std::vector<Elt> const& gens);

  // A complete presentation on gens: word(e) s word(es)^-1 for all e, s,
  // freely reduced and nonempty.
  GroupPresentation cayley_presentation(FinGroup const& g, std::vector<Elt> const& gens);

  ////////////////////////////////////////////////////////////////////////
  // Homomorphisms
  ////////////////////////////////////////////////////////////////////////

  using GroupHom = std::vector<Elt>;

  bool is_homomorphism(FinGroup const& g, FinGroup const& h, GroupHom const& f);

  // Calls visit for every homomorphism g -> h; stop early by returning false.
  void for_each_homomorphism(FinGroup const&                        g,
                             FinGroup const&                        h,
                             std::function<bool(GroupHom const&)> const& visit);

  std::vector<GroupHom> homomorphisms(FinGroup const& g, FinGroup const& h);
  std::vector<GroupHom> automorphisms(FinGroup const& g);
  std::optional<GroupHom> find_group_isomorphism(FinGroup const& g, FinGroup const& h);

  std::vector<bool> kernel(FinGroup const& g, FinGroup const& h, GroupHom const& f);

}  // namespace cofib

#endif  // COFIB_GROUP_HPP_
