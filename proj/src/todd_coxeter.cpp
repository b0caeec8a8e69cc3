#include "cofib/todd_coxeter.hpp"

#include <deque>

namespace cofib {

  namespace {
    struct BudgetExhausted {};
  }  // namespace

  ToddCoxeter::ToddCoxeter(GroupPresentation const& pres, std::size_t max_cosets)
      : _letters(2 * pres.generators), _max_cosets(max_cosets) {
    for (auto const& r : pres.relators) {
      auto w = free_reduce(r);
      if (w.empty()) {
        continue;
      }
      for (Letter l : w) {
        if (generator_of(l) >= pres.generators) {
          throw InputError("relator uses an unknown generator");
        }
      }
      _relators.push_back(std::move(w));
    }
    _table.emplace_back(_letters, kNone);
    _parent.push_back(0);
  }

  std::size_t ToddCoxeter::rep(std::size_t c) const {
    std::size_t r = c;
    while (_parent[r] != r) {
      r = _parent[r];
    }
    while (_parent[c] != r) {
      std::size_t next = _parent[c];
      _parent[c]       = r;
      c                = next;
    }
    return r;
  }

  std::size_t ToddCoxeter::lookup(std::size_t c, Letter x) const {
    std::size_t d = _table[c][x];
    return d == kNone ? kNone : rep(d);
  }

  std::size_t ToddCoxeter::define(std::size_t c, Letter x) {
    if (_table.size() >= _max_cosets) {
      throw BudgetExhausted{};
    }
    std::size_t d = _table.size();
    _table.emplace_back(_letters, kNone);
    _parent.push_back(d);
    _table[c][x]                 = d;
    _table[d][inverse_letter(x)] = c;
    return d;
  }

  void ToddCoxeter::scan_and_fill(std::size_t c, GroupWord const& w) {
    std::size_t f = c, b = c;
    std::size_t i = 0, j = w.size();  // unscanned part is w[i, j)
    while (true) {
      while (i < j && lookup(f, w[i]) != kNone) {
        f = lookup(f, w[i]);
        ++i;
      }
      if (i == j) {
        if (f != b) {
          coincidence(f, b);
        }
        return;
      }
      while (j > i && lookup(b, inverse_letter(w[j - 1])) != kNone) {
        b = lookup(b, inverse_letter(w[j - 1]));
        --j;
      }
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        _table[f][w[i]]                 = b;
        _table[b][inverse_letter(w[i])] = f;
        return;
      }
      define(f, w[i]);
    }
  }

  void ToddCoxeter::coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> queue;
    auto                    merge = [&](std::size_t x, std::size_t y) {
      x = rep(x);
      y = rep(y);
      if (x == y) {
        return;
      }
      if (x > y) {
        std::swap(x, y);
      }
      _parent[y] = x;
      queue.push_back(y);
    };
    merge(a, b);
    while (!queue.empty()) {
      std::size_t d = queue.front();
      queue.pop_front();
      for (Letter x = 0; x < _letters; ++x) {
        std::size_t e = _table[d][x];
        if (e == kNone) {
          continue;
        }
        _table[d][x] = kNone;
        Letter xi    = inverse_letter(x);
        if (_table[e][xi] == d) {
          _table[e][xi] = kNone;
        }
        std::size_t d1 = rep(d), e1 = rep(e);
        if (lookup(d1, x) != kNone) {
          merge(e1, lookup(d1, x));
        } else if (lookup(e1, xi) != kNone) {
          merge(d1, lookup(e1, xi));
        } else {
          _table[d1][x]  = e1;
          _table[e1][xi] = d1;
        }
      }
    }
  }

  bool ToddCoxeter::run() {
    if (_complete) {
      return true;
    }
    try {
      for (std::size_t c = 0; c < _table.size(); ++c) {
        for (auto const& r : _relators) {
          if (rep(c) != c) {
            break;
          }
          scan_and_fill(c, r);
        }
        for (Letter x = 0; x < _letters && rep(c) == c; ++x) {
          if (lookup(c, x) == kNone) {
            define(c, x);
          }
        }
      }
    } catch (BudgetExhausted const&) {
      return false;
    }
    compact();
    _complete = true;
    return true;
  }

  void ToddCoxeter::compact() {
    std::vector<std::size_t> index(_table.size(), kNone);
    std::size_t              n = 0;
    for (std::size_t c = 0; c < _table.size(); ++c) {
      if (rep(c) == c) {
        index[c] = n++;
      }
    }
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(_letters));
    for (std::size_t c = 0; c < _table.size(); ++c) {
      if (index[c] == kNone) {
        continue;
      }
      for (Letter x = 0; x < _letters; ++x) {
        table[index[c]][x] = index[lookup(c, x)];
      }
    }
    _table = std::move(table);
    _parent.resize(n);
    for (std::size_t c = 0; c < n; ++c) {
      _parent[c] = c;
    }
  }

  std::optional<std::size_t> ToddCoxeter::trace(GroupWord const& w, std::size_t from) const {
    std::size_t c = rep(from);
    for (Letter l : w) {
      if (l >= _letters) {
        throw InputError("trace: word uses an unknown generator");
      }
      c = lookup(c, l);
      if (c == kNone) {
        return std::nullopt;
      }
    }
    return c;
  }

  std::size_t ToddCoxeter::size() const {
    if (!_complete) {
      throw Error("coset enumeration is not complete");
    }
    return _table.size();
  }

  std::vector<GroupWord> ToddCoxeter::coset_words() const {
    std::size_t            n = size();
    std::vector<GroupWord> words(n);
    std::vector<bool>      seen(n, false);
    std::vector<std::size_t> queue{0};
    seen[0] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::size_t c = queue[i];
      for (Letter x = 0; x < _letters; ++x) {
        std::size_t d = _table[c][x];
        if (!seen[d]) {
          seen[d]  = true;
          words[d] = words[c];
          words[d].push_back(x);
          queue.push_back(d);
        }
      }
    }
    return words;
  }

  FinGroup ToddCoxeter::group(std::size_t max_order) const {
    std::size_t n = size();
    if (n > max_order) {
      throw TooLarge("coset enumeration produced a group of order " + std::to_string(n));
    }
    auto                          words = coset_words();
    std::vector<std::vector<Elt>> table(n, std::vector<Elt>(n));
    std::vector<std::string>      names(n);
    for (std::size_t a = 0; a < n; ++a) {
      names[a] = to_string(words[a]);
      for (std::size_t b = 0; b < n; ++b) {
        table[a][b] = *trace(words[b], a);
      }
    }
    return FinGroup(std::move(names), std::move(table));
  }

  std::vector<Elt> ToddCoxeter::generator_images() const {
    size();
    std::vector<Elt> out;
    for (Letter x = 0; x < _letters; x += 2) {
      out.push_back(_table[0][x]);
    }
    return out;
  }

}  // namespace cofib
