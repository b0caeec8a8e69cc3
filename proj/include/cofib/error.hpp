#ifndef COFIB_ERROR_HPP_
#define COFIB_ERROR_HPP_

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cofib {

  inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // Base class of everything the library throws on purpose.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed input or violated precondition.
  class InputError : public Error {
   public:
    using Error::Error;
  };

  // Instance exceeds a fixed desk-scale cutoff (iso search, fibre order, ...).
  class TooLarge : public Error {
   public:
    using Error::Error;
  };

  // Exact operation requested over a base groupoid that is only presented.
  class InfiniteBase : public Error {
   public:
    using Error::Error;
  };

  // A list of violated axiom instances; empty means valid.
  struct ValidationReport {
    std::vector<std::string> failures;

    bool ok() const noexcept {
      return failures.empty();
    }
    void add(std::string what) {
      failures.push_back(std::move(what));
    }
    void merge(ValidationReport const& other, std::string const& prefix = "") {
      for (auto const& f : other.failures) {
        failures.push_back(prefix + f);
      }
    }
  };

}  // namespace cofib

#endif  // COFIB_ERROR_HPP_
