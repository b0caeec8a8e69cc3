#include "cofib/words.hpp"

#include <algorithm>

namespace cofib {

  GroupWord free_reduce(GroupWord const& w) {
    GroupWord out;
    out.reserve(w.size());
    for (Letter l : w) {
      if (!out.empty() && out.back() == inverse_letter(l)) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    return out;
  }

  GroupWord invert(GroupWord const& w) {
    GroupWord out(w.rbegin(), w.rend());
    for (Letter& l : out) {
      l = inverse_letter(l);
    }
    return out;
  }

  GroupWord concat(GroupWord const& a, GroupWord const& b) {
    GroupWord out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }

  std::string to_string(GroupWord const& w) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (Letter l : w) {
      std::size_t g = generator_of(l);
      if (g < 26) {
        char c = static_cast<char>('a' + g);
        out.push_back(is_inverse(l) ? static_cast<char>(c - 'a' + 'A') : c);
      } else {
        out += "g" + std::to_string(g) + (is_inverse(l) ? "^-1" : "") + " ";
      }
    }
    return out;
  }

}  // namespace cofib
