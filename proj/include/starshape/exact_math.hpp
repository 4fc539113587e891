/**
 * @file exact_math.hpp
 * @brief Exact rational arithmetic, fraction-free elimination, a rational
 *        phase-one simplex and a portable seeded generator.
 *
 * Everything that decides an answer in this library goes through the
 * routines here; floating point never enters a rank or feasibility test.
 */
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace starshape {

/// Base class of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad arguments, bad files, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A random draw failed to be generic enough after all retries.
class GenericityError : public Error {
 public:
  using Error::Error;
};

/// A self-check failed; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

// mpq_class keeps values canonical (lowest terms, positive denominator)
// after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "p", "-p" or "p/q" (decimal, no whitespace).
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw InputError("not a rational number: '" + std::string(text) + "'");
  Integer d(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  if (text.front() == '-') n = -n;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline std::size_t binomial_size(std::size_t n, std::size_t k) {
  return static_cast<std::size_t>(binomial(n, k).get_ui());
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// Dense row-major matrix over an exact ring.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw InputError("matrix entry count does not match shape");
  }
  DenseMatrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw InputError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<T>& entries() const { return data_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = DenseMatrix<Rational>;
using IntMatrix = DenseMatrix<Integer>;
using RatVector = std::vector<Rational>;

inline RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  RatMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

inline RatVector multiply(const RatMatrix& a, std::span<const Rational> v) {
  if (a.cols() != v.size()) throw InputError("matrix-vector shape mismatch");
  RatVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

/// Scales every row by the lcm of its denominators, giving an integer
/// matrix with the same row space.
inline IntMatrix clear_row_denominators(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (const auto& q : m.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& q = m(r, c);
      out(r, c) = q.get_num() * (l / q.get_den());
    }
  }
  return out;
}

inline std::vector<std::size_t> natural_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  return order;
}

inline void check_permutation(std::span<const std::size_t> order, std::size_t n) {
  if (order.size() != n) throw InputError("column order must be a permutation");
  std::vector<bool> seen(n, false);
  for (auto c : order) {
    if (c >= n || seen[c]) throw InputError("column order must be a permutation");
    seen[c] = true;
  }
}

/**
 * Fraction-free forward elimination (Bareiss), in place.
 *
 * Columns are visited in @p order; the first unused row with a nonzero
 * entry becomes the pivot row and is swapped up. On return the first
 * rank rows are an echelon form with respect to the scan order.
 * Returns the pivot columns in scan order and the number of row swaps.
 */
inline std::pair<std::vector<std::size_t>, std::size_t> bareiss_echelon(IntMatrix& a,
                                                                        std::span<const std::size_t> order) {
  check_permutation(order, a.cols());
  std::vector<std::size_t> pivots;
  std::size_t swaps = 0;
  Integer prev = 1;
  Integer t;
  std::size_t rank = 0;
  for (std::size_t col : order) {
    if (rank == a.rows()) break;
    std::size_t pr = rank;
    while (pr < a.rows() && a(pr, col) == 0) ++pr;
    if (pr == a.rows()) continue;
    if (pr != rank) {
      a.swap_rows(pr, rank);
      ++swaps;
    }
    const Integer piv = a(rank, col);
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      const Integer lead = a(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j) {
        // a_ij <- (piv * a_ij - lead * a_rank,j) / prev, exact by Sylvester's identity
        t = piv * a(i, j);
        t -= lead * a(rank, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = piv;
    pivots.push_back(col);
    ++rank;
  }
  return {std::move(pivots), swaps};
}

/**
 * Left-looking Bareiss column selection.
 *
 * Scans the columns of @p a in @p order and returns those that are
 * linearly independent of all earlier scanned columns. A column is
 * only reduced when it is reached, so stopping at @p stop_rank (the row
 * count by default) skips the untouched tail entirely.
 */
inline std::vector<std::size_t> independent_columns(const IntMatrix& a, std::span<const std::size_t> order,
                                                    std::size_t stop_rank = std::numeric_limits<std::size_t>::max()) {
  const std::size_t rows = a.rows();
  stop_rank = std::min(stop_rank, rows);
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> pivot_rows;
  std::vector<std::vector<Integer>> pivot_cols;  // column state at its own pivot step
  std::vector<Integer> pivot_vals{Integer(1)};
  std::vector<bool> used(rows, false);
  std::vector<Integer> c(rows);
  Integer t;
  for (std::size_t col : order) {
    if (pivots.size() >= stop_rank) break;
    for (std::size_t i = 0; i < rows; ++i) c[i] = a(i, col);
    std::vector<bool> frozen(rows, false);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      const std::size_t rk = pivot_rows[k];
      frozen[rk] = true;
      const Integer& pk = pivot_vals[k + 1];
      const Integer& prev = pivot_vals[k];
      const Integer ck = c[rk];
      const auto& colk = pivot_cols[k];
      for (std::size_t i = 0; i < rows; ++i) {
        if (frozen[i]) continue;
        t = pk * c[i];
        if (ck != 0) t -= colk[i] * ck;
        mpz_divexact(c[i].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    std::size_t pr = rows;
    for (std::size_t i = 0; i < rows; ++i)
      if (!used[i] && c[i] != 0) {
        pr = i;
        break;
      }
    if (pr == rows) continue;
    used[pr] = true;
    pivots.push_back(col);
    pivot_rows.push_back(pr);
    pivot_vals.push_back(c[pr]);
    pivot_cols.push_back(c);
  }
  return pivots;
}

struct RrefResult {
  std::vector<std::size_t> pivot_columns;  ///< in scan order
  RatMatrix reduced;
};

/// Reduced row-echelon form where pivots are searched in the given column order.
inline RrefResult rref_with_column_order(const RatMatrix& m, std::span<const std::size_t> order) {
  IntMatrix a = clear_row_denominators(m);
  auto [pivots, swaps] = bareiss_echelon(a, order);
  (void)swaps;
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(a(i, j));
  // normalize and back-substitute from the last pivot upward
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const std::size_t pc = pivots[k];
    const Rational inv = 1 / r(k, pc);
    for (std::size_t j = 0; j < r.cols(); ++j) r(k, j) *= inv;
    for (std::size_t i = 0; i < k; ++i) {
      const Rational f = r(i, pc);
      if (f == 0) continue;
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) -= f * r(k, j);
    }
  }
  return {std::move(pivots), std::move(r)};
}

inline RrefResult rref(const RatMatrix& m) {
  const auto order = natural_order(m.cols());
  return rref_with_column_order(m, order);
}

inline std::size_t rank(const IntMatrix& m) { return independent_columns(m, natural_order(m.cols())).size(); }
inline std::size_t rank(const RatMatrix& m) { return rank(clear_row_denominators(m)); }

/// Basis of the right kernel; one vector per non-pivot column.
inline std::vector<RatVector> nullspace(const RatMatrix& m) {
  const auto [pivots, r] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  IntMatrix a = m;
  auto [pivots, swaps] = bareiss_echelon(a, natural_order(a.cols()));
  if (pivots.size() < a.rows()) return 0;
  Integer det = a(a.rows() - 1, a.cols() - 1);
  return swaps % 2 ? Integer(-det) : det;
}

inline Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  Integer scale = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (const auto& q : m.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    scale *= l;
  }
  Rational det(determinant(clear_row_denominators(m)), scale);
  det.canonicalize();
  return det;
}

/// Inverse by Gauss-Jordan on [m | I]; throws on singular input.
inline RatMatrix inverse(const RatMatrix& m) {
  const std::size_t k = m.rows();
  if (k != m.cols()) throw InputError("inverse of a non-square matrix");
  RatMatrix aug(k, 2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = m(i, j);
    aug(i, k + i) = 1;
  }
  auto [pivots, r] = rref(aug);
  if (pivots.size() < k || pivots[k - 1] != k - 1) throw InputError("matrix is singular");
  RatMatrix inv(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) inv(i, j) = r(i, k + j);
  return inv;
}

// ---------------------------------------------------------------------------
// Linear feasibility

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LpResult {
  bool feasible = false;
  RatVector witness;  ///< valid only when feasible
};

/**
 * Decides whether {x : A x (rel) b, x_j >= 0 where nonneg[j]} is nonempty.
 *
 * Exact phase-one simplex with Bland's rule. Free variables are split
 * into a difference of two non-negative ones.
 */
inline LpResult lp_feasible(const RatMatrix& a, std::span<const Rational> b, std::span<const Relation> relations,
                            const std::vector<bool>& nonneg) {
  const std::size_t rows = a.rows();
  const std::size_t vars = a.cols();
  if (b.size() != rows || relations.size() != rows || nonneg.size() != vars)
    throw InputError("lp_feasible: inconsistent dimensions");

  // Column layout: split variables, slacks, artificials.
  std::vector<std::size_t> pos_col(vars), neg_col(vars, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < vars; ++j) {
    pos_col[j] = ncols++;
    if (!nonneg[j]) neg_col[j] = ncols++;
  }
  std::vector<std::size_t> slack_col(rows, SIZE_MAX);
  for (std::size_t i = 0; i < rows; ++i)
    if (relations[i] != Relation::Equal) slack_col[i] = ncols++;
  const std::size_t first_art = ncols;
  ncols += rows;

  // Tableau rows 0..rows-1, last column is the right-hand side.
  RatMatrix t(rows + 1, ncols + 1);
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const int sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < vars; ++j) {
      t(i, pos_col[j]) = sign * a(i, j);
      if (neg_col[j] != SIZE_MAX) t(i, neg_col[j]) = -sign * a(i, j);
    }
    if (slack_col[i] != SIZE_MAX) t(i, slack_col[i]) = sign * (relations[i] == Relation::LessEqual ? 1 : -1);
    t(i, first_art + i) = 1;
    t(i, ncols) = sign * b[i];
    basis[i] = first_art + i;
  }
  // Objective row: minimize the sum of artificials, stored as reduced costs.
  for (std::size_t j = 0; j <= ncols; ++j) {
    Rational s = 0;
    if (j < first_art || j == ncols)
      for (std::size_t i = 0; i < rows; ++i) s -= t(i, j);
    t(rows, j) = s;
  }

  for (;;) {
    std::size_t enter = SIZE_MAX;
    for (std::size_t j = 0; j < ncols; ++j)
      if (t(rows, j) < 0) {
        enter = j;
        break;
      }
    if (enter == SIZE_MAX) break;
    std::size_t leave = SIZE_MAX;
    Rational best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational ratio = t(i, ncols) / t(i, enter);
      if (leave == SIZE_MAX || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == SIZE_MAX) break;  // cannot happen: phase one is bounded below by 0
    const Rational inv = 1 / t(leave, enter);
    for (std::size_t j = 0; j <= ncols; ++j) t(leave, j) *= inv;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const Rational f = t(i, enter);
      if (f == 0) continue;
      for (std::size_t j = 0; j <= ncols; ++j) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
  }

  LpResult res;
  if (t(rows, ncols) != 0) return res;  // minimal artificial sum is positive
  RatVector column_value(ncols);
  for (std::size_t i = 0; i < rows; ++i) column_value[basis[i]] = t(i, ncols);
  res.feasible = true;
  res.witness.resize(vars);
  for (std::size_t j = 0; j < vars; ++j) {
    res.witness[j] = column_value[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) res.witness[j] -= column_value[neg_col[j]];
  }
  return res;
}

// ---------------------------------------------------------------------------
// Randomness

/**
 * Deterministic 64-bit generator. The Mersenne Twister output sequence is
 * fixed by the standard, and bounded draws use plain rejection sampling,
 * so streams are identical on every platform.
 */
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw InputError("empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do x = next_u64();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer, used to derive child seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// k x k integer matrix with entries uniform in [-bound, bound] and nonzero determinant.
inline RatMatrix random_invertible_matrix(SeededRng& rng, std::size_t k, std::int64_t bound) {
  if (bound < 2) throw InputError("coefficient bound must be at least 2");
  for (int attempt = 0; attempt < 100; ++attempt) {
    IntMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = static_cast<long>(rng.uniform(-bound, bound));
    if (determinant(m) != 0) {
      RatMatrix out(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) out(i, j) = Rational(m(i, j));
      return out;
    }
  }
  throw GenericityError("no invertible matrix after 100 draws; random source is broken");
}

}  // namespace starshape
