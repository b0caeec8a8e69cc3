#include "cofib/linalg.hpp"

#include <algorithm>
#include <utility>

namespace cofib {

  Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) {
      throw Error("integer overflow");
    }
    return r;
  }

  Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) {
      throw Error("integer overflow");
    }
    return r;
  }

  Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) {
      throw Error("integer overflow");
    }
    return r;
  }

  IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      m[i][i] = 1;
    }
    return m;
  }

  IntMatrix matrix_product(IntMatrix const& a, IntMatrix const& b, std::size_t inner) {
    std::size_t cols = b.empty() ? 0 : b.front().size();
    IntMatrix   out(a.size(), IntVector(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t k = 0; k < inner; ++k) {
        if (a[i][k] == 0) {
          continue;
        }
        for (std::size_t j = 0; j < cols; ++j) {
          out[i][j] = checked_add(out[i][j], checked_mul(a[i][k], b[k][j]));
        }
      }
    }
    return out;
  }

  IntVector row_times(IntVector const& x, IntMatrix const& m, std::size_t cols) {
    IntVector out(cols, 0);
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] == 0) {
        continue;
      }
      for (std::size_t j = 0; j < cols; ++j) {
        out[j] = checked_add(out[j], checked_mul(x[k], m[k][j]));
      }
    }
    return out;
  }

  namespace {

    class Smith {
     public:
      Smith(IntMatrix const& a, std::size_t cols)
          : _a(a), _rows(a.size()), _cols(cols), _V(identity_matrix(cols)),
            _Vinv(identity_matrix(cols)) {
        for (auto const& row : _a) {
          if (row.size() != cols) {
            throw InputError("smith_normal_form: ragged matrix");
          }
        }
      }

      SmithForm run() {
        std::size_t n = std::min(_rows, _cols);
        for (std::size_t t = 0; t < n; ++t) {
          if (!move_min_to(t)) {
            break;
          }
          while (true) {
            bool dirty = clear_column(t);
            dirty      = clear_row(t) || dirty;
            if (dirty) {
              continue;
            }
            if (!fix_divisibility(t)) {
              break;
            }
          }
          if (_a[t][t] < 0) {
            for (auto& x : _a[t]) {
              x = -x;
            }
          }
        }
        SmithForm out;
        out.diagonal.resize(n, 0);
        for (std::size_t t = 0; t < n; ++t) {
          out.diagonal[t] = _a[t][t];
        }
        out.V    = std::move(_V);
        out.Vinv = std::move(_Vinv);
        return out;
      }

     private:
      void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) {
          return;
        }
        for (auto& row : _a) {
          std::swap(row[i], row[j]);
        }
        for (auto& row : _V) {
          std::swap(row[i], row[j]);
        }
        std::swap(_Vinv[i], _Vinv[j]);
      }

      // column j -= q * column t
      void col_sub(std::size_t j, std::size_t t, Int q) {
        for (auto& row : _a) {
          row[j] = checked_sub(row[j], checked_mul(q, row[t]));
        }
        for (auto& row : _V) {
          row[j] = checked_sub(row[j], checked_mul(q, row[t]));
        }
        for (std::size_t k = 0; k < _cols; ++k) {
          _Vinv[t][k] = checked_add(_Vinv[t][k], checked_mul(q, _Vinv[j][k]));
        }
      }

      void row_sub(std::size_t i, std::size_t t, Int q) {
        for (std::size_t k = 0; k < _cols; ++k) {
          _a[i][k] = checked_sub(_a[i][k], checked_mul(q, _a[t][k]));
        }
      }

      bool move_min_to(std::size_t t) {
        std::size_t bi = _rows, bj = _cols;
        Int         best = 0;
        for (std::size_t i = t; i < _rows; ++i) {
          for (std::size_t j = t; j < _cols; ++j) {
            Int v = _a[i][j] < 0 ? -_a[i][j] : _a[i][j];
            if (v != 0 && (best == 0 || v < best)) {
              best = v;
              bi   = i;
              bj   = j;
            }
          }
        }
        if (best == 0) {
          return false;
        }
        std::swap(_a[t], _a[bi]);
        swap_cols(t, bj);
        return true;
      }

      bool clear_column(std::size_t t) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < _rows; ++i) {
          while (_a[i][t] != 0) {
            row_sub(i, t, _a[i][t] / _a[t][t]);
            if (_a[i][t] != 0) {
              std::swap(_a[i], _a[t]);
              dirty = true;
            }
          }
        }
        return dirty;
      }

      bool clear_row(std::size_t t) {
        bool dirty = false;
        for (std::size_t j = t + 1; j < _cols; ++j) {
          while (_a[t][j] != 0) {
            col_sub(j, t, _a[t][j] / _a[t][t]);
            if (_a[t][j] != 0) {
              swap_cols(j, t);
              dirty = true;
            }
          }
        }
        return dirty;
      }

      bool fix_divisibility(std::size_t t) {
        for (std::size_t i = t + 1; i < _rows; ++i) {
          for (std::size_t j = t + 1; j < _cols; ++j) {
            if (_a[i][j] % _a[t][t] != 0) {
              for (std::size_t k = 0; k < _cols; ++k) {
                _a[t][k] = checked_add(_a[t][k], _a[i][k]);
              }
              return true;
            }
          }
        }
        return false;
      }

      IntMatrix   _a;
      std::size_t _rows;
      std::size_t _cols;
      IntMatrix   _V;
      IntMatrix   _Vinv;
    };

  }  // namespace

  SmithForm smith_normal_form(IntMatrix const& a, std::size_t cols) {
    return Smith(a, cols).run();
  }

  std::string to_string(AbelianInvariants const& inv) {
    std::string out = "(";
    for (std::size_t i = 0; i < inv.factors.size(); ++i) {
      out += (i ? "," : "") + std::to_string(inv.factors[i]);
    }
    out += ") free rank " + std::to_string(inv.free_rank);
    return out;
  }

  AbelianInvariants abelian_invariants(IntMatrix const& rels, std::size_t gens) {
    auto              snf = smith_normal_form(rels, gens);
    AbelianInvariants out;
    std::size_t       nonzero = 0;
    for (Int d : snf.diagonal) {
      if (d != 0) {
        ++nonzero;
        if (d > 1) {
          out.factors.push_back(d);
        }
      }
    }
    out.free_rank = gens - nonzero;
    return out;
  }

  RowSpace::RowSpace(IntMatrix const& rels, std::size_t cols) : _cols(cols) {
    auto snf  = smith_normal_form(rels, cols);
    _diagonal = snf.diagonal;
    _diagonal.resize(cols, 0);
    _V = std::move(snf.V);
  }

  bool RowSpace::contains(IntVector const& x) const {
    IntVector y = row_times(x, _V, _cols);
    for (std::size_t t = 0; t < _cols; ++t) {
      Int d = _diagonal[t];
      if (d == 0 ? y[t] != 0 : y[t] % d != 0) {
        return false;
      }
    }
    return true;
  }

  FinAbGroup::FinAbGroup(std::size_t gens, IntMatrix const& rels, std::size_t max_order)
      : _gens(gens) {
    auto snf = smith_normal_form(rels, gens);
    _moduli.assign(gens, 0);
    for (std::size_t t = 0; t < snf.diagonal.size(); ++t) {
      _moduli[t] = snf.diagonal[t];
    }
    for (Int d : _moduli) {
      if (d == 0) {
        throw InfiniteBase("abelian group is infinite");
      }
      _order *= static_cast<std::size_t>(d);
      if (_order > max_order) {
        throw TooLarge("abelian group order exceeds " + std::to_string(max_order));
      }
    }
    _V    = std::move(snf.V);
    _Vinv = std::move(snf.Vinv);
  }

  std::size_t FinAbGroup::index(IntVector const& x) const {
    IntVector   y   = row_times(x, _V, _gens);
    std::size_t idx = 0;
    for (std::size_t t = 0; t < _gens; ++t) {
      Int m = _moduli[t];
      Int c = ((y[t] % m) + m) % m;
      idx   = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(c);
    }
    return idx;
  }

  IntVector FinAbGroup::element(std::size_t index) const {
    IntVector c(_gens, 0);
    for (std::size_t t = _gens; t-- > 0;) {
      auto m = static_cast<std::size_t>(_moduli[t]);
      c[t]   = static_cast<Int>(index % m);
      index /= m;
    }
    return row_times(c, _Vinv, _gens);
  }

}  // namespace cofib
