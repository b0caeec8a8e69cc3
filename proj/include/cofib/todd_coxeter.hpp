#ifndef COFIB_TODD_COXETER_HPP_
#define COFIB_TODD_COXETER_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "cofib/group.hpp"
#include "cofib/words.hpp"

namespace cofib {

  // HLT coset enumeration over the trivial subgroup. Every entry of the table
  // is a consequence of the relators, so a partial table can still certify
  // equalities: if a word traces from coset 0 back to coset 0 it is trivial.
  class ToddCoxeter {
   public:
    ToddCoxeter(GroupPresentation const& pres, std::size_t max_cosets);

    // Returns true if the enumeration completed within the budget.
    bool run();

    bool complete() const noexcept {
      return _complete;
    }

    // Coset reached by reading w from coset `from`; nullopt if the path
    // leaves the defined part of the table.
    std::optional<std::size_t> trace(GroupWord const& w, std::size_t from = 0) const;

    // Only after a complete run.
    std::size_t size() const;
    // Regular representation; element i is the coset i, element 0 is 1.
    FinGroup         group(std::size_t max_order = 2048) const;
    std::vector<Elt> generator_images() const;
    // A word for each coset (shortlex in BFS order).
    std::vector<GroupWord> coset_words() const;

   private:
    std::size_t rep(std::size_t c) const;
    std::size_t lookup(std::size_t c, Letter x) const;
    std::size_t define(std::size_t c, Letter x);
    void        scan_and_fill(std::size_t c, GroupWord const& w);
    void        coincidence(std::size_t a, std::size_t b);
    void        compact();

    std::size_t                           _letters;
    std::vector<GroupWord>                _relators;
    std::size_t                           _max_cosets;
    std::vector<std::vector<std::size_t>> _table;
    mutable std::vector<std::size_t>      _parent;
    bool                                  _complete = false;
  };

}  // namespace cofib

#endif  // COFIB_TODD_COXETER_HPP_
