#ifndef COFIB_LINALG_HPP_
#define COFIB_LINALG_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cofib/error.hpp"

namespace cofib {

  using Int       = std::int64_t;
  using IntVector = std::vector<Int>;
  using IntMatrix = std::vector<IntVector>;

  // Overflow-checked arithmetic; throws Error on overflow.
  Int checked_add(Int a, Int b);
  Int checked_sub(Int a, Int b);
  Int checked_mul(Int a, Int b);

  IntMatrix identity_matrix(std::size_t n);
  IntMatrix matrix_product(IntMatrix const& a, IntMatrix const& b, std::size_t inner);
  // Row vector times matrix.
  IntVector row_times(IntVector const& x, IntMatrix const& m, std::size_t cols);

  // D = U A V with D diagonal, d_0 | d_1 | ... and d_i >= 0. Only V and its
  // inverse are tracked.
  struct SmithForm {
    std::vector<Int> diagonal;  // length min(rows, cols)
    IntMatrix        V;
    IntMatrix        Vinv;
  };

  SmithForm smith_normal_form(IntMatrix const& a, std::size_t cols);

  struct AbelianInvariants {
    std::vector<Int> factors;  // each > 1, in divisibility order
    std::size_t      free_rank = 0;

    bool is_zero() const noexcept {
      return factors.empty() && free_rank == 0;
    }
    friend bool operator==(AbelianInvariants const&, AbelianInvariants const&) = default;
  };

  std::string to_string(AbelianInvariants const& inv);

  // Invariants of Z^gens / rowspace(rels).
  AbelianInvariants abelian_invariants(IntMatrix const& rels, std::size_t gens);

  // Membership in the row space of an integer matrix.
  class RowSpace {
   public:
    RowSpace(IntMatrix const& rels, std::size_t cols);
    bool contains(IntVector const& x) const;

   private:
    std::size_t      _cols;
    std::vector<Int> _diagonal;  // padded with zeros to cols
    IntMatrix        _V;
  };

  // A finite abelian group Z^gens / rowspace(rels) with normal-form coordinates.
  class FinAbGroup {
   public:
    // Throws InfiniteBase if the group is infinite, TooLarge above max_order.
    FinAbGroup(std::size_t gens, IntMatrix const& rels, std::size_t max_order = 1 << 20);

    std::size_t order() const noexcept {
      return _order;
    }
    std::size_t generators() const noexcept {
      return _gens;
    }
    // Index in [0, order) of the class of x.
    std::size_t index(IntVector const& x) const;
    // A representative vector of the element with the given index.
    IntVector element(std::size_t index) const;

   private:
    std::size_t      _gens;
    std::size_t      _order = 1;
    std::vector<Int> _moduli;  // one per generator; 1 for killed coordinates
    IntMatrix        _V;
    IntMatrix        _Vinv;
  };

}  // namespace cofib

#endif  // COFIB_LINALG_HPP_
