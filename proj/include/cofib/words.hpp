#ifndef COFIB_WORDS_HPP_
#define COFIB_WORDS_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace cofib {

  // Letters of free-group words: generator g is 2g, its inverse 2g + 1.
  using Letter    = std::size_t;
  using GroupWord = std::vector<Letter>;

  constexpr Letter letter(std::size_t gen, bool inverse = false) noexcept {
    return 2 * gen + (inverse ? 1 : 0);
  }
  constexpr std::size_t generator_of(Letter l) noexcept {
    return l / 2;
  }
  constexpr bool is_inverse(Letter l) noexcept {
    return (l & 1) != 0;
  }
  constexpr Letter inverse_letter(Letter l) noexcept {
    return l ^ 1;
  }

  // Cancels adjacent x x^-1 pairs.
  GroupWord free_reduce(GroupWord const& w);
  GroupWord invert(GroupWord const& w);
  GroupWord concat(GroupWord const& a, GroupWord const& b);

  // Renders with single-character names a, b, c, ... (or g12 beyond z);
  // inverses are upper case.
  std::string to_string(GroupWord const& w);

  // A group given by generators and relators.
  struct GroupPresentation {
    std::size_t        generators = 0;
    std::vector<GroupWord> relators;
  };

}  // namespace cofib

#endif  // COFIB_WORDS_HPP_
