/**
 * @file scheme.hpp
 * @brief Fat point schemes in projective space, star configurations and the
 *        differential condition matrices that cut out symbolic powers.
 *
 * Over a field of characteristic zero a form lies in the m-th symbolic
 * power of a reduced point ideal iff all its partial derivatives of order
 * m-1 vanish at every point (Euler's relation takes care of the lower
 * orders once d >= m-1). Degree-d pieces of I^(m) are therefore kernels
 * of explicit integer matrices.
 */
#pragma once

#include "starshape/exact_math.hpp"
#include "starshape/monomial.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace starshape {

/// Homogeneous coordinates, normalized so the last nonzero entry is 1.
class ProjPoint {
 public:
  explicit ProjPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {
    auto it = std::find_if(coords_.rbegin(), coords_.rend(), [](const Rational& q) { return q != 0; });
    if (it == coords_.rend()) throw InputError("projective point with all coordinates zero");
    const Rational last = *it;
    for (auto& q : coords_) q /= last;
  }

  std::size_t size() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  /// Primitive integer representative of the same projective point.
  std::vector<Integer> integer_coords() const { return primitive_integer(coords_); }

  static std::vector<Integer> primitive_integer(std::span<const Rational> v) {
    Integer l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> out;
    Integer g = 0;
    for (const auto& q : v) {
      out.push_back(q.get_num() * (l / q.get_den()));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g > 1)
      for (auto& z : out) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
    return out;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < size(); ++i) s += (i ? ":" : "") + starshape::to_string(coords_[i]);
    return s + ")";
  }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  std::vector<Rational> coords_;
};

/// Linear form sum_i coeffs[i] * x_{i+1}.
struct Hyperplane {
  std::vector<Rational> coeffs;
};

class FatPointScheme {
 public:
  FatPointScheme(std::size_t dim, std::vector<ProjPoint> points, unsigned multiplicity)
      : dim_(dim), points_(std::move(points)), multiplicity_(multiplicity) {
    if (dim_ < 1) throw InputError("ambient dimension must be at least 1");
    if (multiplicity_ < 1) throw InputError("multiplicity must be at least 1");
    if (points_.empty()) throw InputError("point scheme has no points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].size() != dim_ + 1)
        throw InputError("point " + std::to_string(i) + " has " + std::to_string(points_[i].size()) +
                         " coordinates, expected " + std::to_string(dim_ + 1));
      for (std::size_t j = 0; j < i; ++j)
        if (points_[i] == points_[j])
          throw InputError("points " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
  }

  std::size_t dim() const { return dim_; }
  std::size_t num_vars() const { return dim_ + 1; }
  const std::vector<ProjPoint>& points() const { return points_; }
  unsigned multiplicity() const { return multiplicity_; }

  FatPointScheme with_multiplicity(unsigned m) const { return FatPointScheme(dim_, points_, m); }

  /// Length of S/I^(m): each point contributes binom(n+m-1, n).
  std::size_t degree() const { return points_.size() * binomial_size(dim_ + multiplicity_ - 1, dim_); }

 private:
  std::size_t dim_;
  std::vector<ProjPoint> points_;
  unsigned multiplicity_;
};

// ---------------------------------------------------------------------------
// Condition matrices

/// Order of the derivative rows used at degree d: min(m-1, d).
inline unsigned condition_order(unsigned m, unsigned d) { return std::min(m - 1, d); }

/**
 * Integer condition matrix for the given points (primitive integer
 * coordinates). Rows: (point, beta) with |beta| = min(m-1, d), beta in
 * descending revlex; columns: the given degree-d monomials.
 * Entry = d^beta(x^alpha) evaluated at the point.
 */
inline IntMatrix integer_conditions(std::span<const std::vector<Integer>> points, unsigned m, unsigned d,
                                    std::span<const ExponentVector> columns) {
  if (points.empty()) return IntMatrix(0, columns.size());
  const std::size_t k = points.front().size();
  const auto betas = monomials_of_degree(k, condition_order(m, d));
  IntMatrix out(points.size() * betas.size(), columns.size());
  std::vector<std::vector<Integer>> powers(k, std::vector<Integer>(d + 1));
  std::size_t row = 0;
  for (const auto& p : points) {
    for (std::size_t i = 0; i < k; ++i) {
      powers[i][0] = 1;
      for (unsigned e = 1; e <= d; ++e) powers[i][e] = powers[i][e - 1] * p[i];
    }
    for (const auto& beta : betas) {
      for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto& alpha = columns[c];
        if (!beta.divides(alpha)) continue;
        Integer v = 1;
        for (std::size_t i = 0; i < k; ++i) {
          for (unsigned f = 0; f < beta[i]; ++f) v *= alpha[i] - f;  // falling factorial
          v *= powers[i][alpha[i] - beta[i]];
        }
        out(row, c) = std::move(v);
      }
      ++row;
    }
  }
  return out;
}

inline std::vector<std::vector<Integer>> integer_points(const FatPointScheme& sch) {
  std::vector<std::vector<Integer>> pts;
  for (const auto& p : sch.points()) pts.push_back(p.integer_coords());
  return pts;
}

/// Rational condition matrix over the normalized coordinates; columns are all
/// degree-d monomials in descending revlex order.
inline RatMatrix conditions_matrix(const FatPointScheme& sch, unsigned d) {
  const auto cols = monomials_of_degree(sch.num_vars(), d);
  const auto betas = monomials_of_degree(sch.num_vars(), condition_order(sch.multiplicity(), d));
  RatMatrix out(sch.points().size() * betas.size(), cols.size());
  std::size_t row = 0;
  for (const auto& p : sch.points())
    for (const auto& beta : betas) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& alpha = cols[c];
        if (!beta.divides(alpha)) continue;
        Rational v = 1;
        for (std::size_t i = 0; i < sch.num_vars(); ++i) {
          for (unsigned f = 0; f < beta[i]; ++f) v *= alpha[i] - f;
          Rational pw = 1;
          for (unsigned e = 0; e < alpha[i] - beta[i]; ++e) pw *= p[i];
          v *= pw;
        }
        out(row, c) = v;
      }
      ++row;
    }
  return out;
}

/// dim of the degree-d piece of I^(m).
inline std::size_t hf_symbolic(const FatPointScheme& sch, unsigned d) {
  const auto cols = monomials_of_degree(sch.num_vars(), d);
  const auto pts = integer_points(sch);
  const IntMatrix c = integer_conditions(pts, sch.multiplicity(), d, cols);
  return cols.size() - independent_columns(c, natural_order(cols.size())).size();
}

/// Kernel basis of the condition matrix: coefficient vectors of a basis of
/// I^(m)_d, indexed by descending-revlex monomials.
inline std::vector<RatVector> symbolic_basis(const FatPointScheme& sch, unsigned d) {
  return nullspace(conditions_matrix(sch, d));
}

// ---------------------------------------------------------------------------
// Star configurations

struct VandermondeMode {};
struct SeededMode {
  std::uint64_t seed = 0;
  std::int64_t bound = 10;
};
using StarMode = std::variant<VandermondeMode, SeededMode>;

struct StarConfiguration {
  std::size_t n = 0;
  std::size_t s = 0;
  std::vector<Hyperplane> hyperplanes;
  std::vector<ProjPoint> points;
  StarMode provenance;

  FatPointScheme scheme(unsigned m) const { return FatPointScheme(n, points, m); }
};

namespace detail {

inline void for_each_subset(std::size_t s, std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == s - n + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Intersection points of every n-subset; nullopt if some subset is degenerate
/// or two points coincide.
inline std::optional<std::vector<ProjPoint>> star_points(std::size_t n, const std::vector<Hyperplane>& hs) {
  std::vector<ProjPoint> pts;
  bool ok = true;
  for_each_subset(hs.size(), n, [&](const std::vector<std::size_t>& idx) {
    if (!ok) return;
    RatMatrix a(n, n + 1);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c <= n; ++c) a(r, c) = hs[idx[r]].coeffs[c];
    auto ker = nullspace(a);
    if (ker.size() != 1) {
      ok = false;
      return;
    }
    ProjPoint p(ker.front());
    if (std::find(pts.begin(), pts.end(), p) != pts.end()) {
      ok = false;
      return;
    }
    pts.push_back(std::move(p));
  });
  if (!ok) return std::nullopt;
  return pts;
}

}  // namespace detail

/// The binom(s, n) points where n of s general hyperplanes in P^n meet.
inline StarConfiguration build_star(std::size_t n, std::size_t s, const StarMode& mode = VandermondeMode{}) {
  if (n < 1) throw InputError("n must be at least 1");
  if (s < n) throw InputError("need s >= n (got s=" + std::to_string(s) + ", n=" + std::to_string(n) + ")");
  StarConfiguration star{n, s, {}, {}, mode};
  if (std::holds_alternative<VandermondeMode>(mode)) {
    // h_j = sum_i j^i x_{i+1}: rows of a Vandermonde matrix, any n+1 independent.
    for (std::size_t j = 1; j <= s; ++j) {
      Hyperplane h;
      Rational pw = 1;
      for (std::size_t i = 0; i <= n; ++i, pw *= static_cast<long>(j)) h.coeffs.push_back(pw);
      star.hyperplanes.push_back(std::move(h));
    }
    auto pts = detail::star_points(n, star.hyperplanes);
    if (!pts) throw InternalError("Vandermonde star configuration failed validation");
    star.points = std::move(*pts);
    return star;
  }
  const auto& sm = std::get<SeededMode>(mode);
  if (sm.bound < 2) throw InputError("coefficient bound must be at least 2");
  SeededRng rng(sm.seed);
  for (int attempt = 0; attempt < 20; ++attempt) {
    star.hyperplanes.clear();
    for (std::size_t j = 0; j < s; ++j) {
      Hyperplane h;
      for (std::size_t i = 0; i <= n; ++i) h.coeffs.emplace_back(static_cast<long>(rng.uniform(-sm.bound, sm.bound)));
      star.hyperplanes.push_back(std::move(h));
    }
    if (auto pts = detail::star_points(n, star.hyperplanes)) {
      star.points = std::move(*pts);
      return star;
    }
  }
  throw GenericityError("could not draw a nondegenerate star configuration in 20 attempts");
}

// ---------------------------------------------------------------------------
// Point files

/**
 * Parses {"dim": n, "multiplicity": m, "points": [["p/q", ...], ...]}.
 * Coordinates may also be JSON integers.
 */
inline FatPointScheme parse_points(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("points file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("points file: top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_unsigned()) throw InputError("points file: 'dim' must be a positive integer");
  const auto dim = doc["dim"].get<std::size_t>();
  unsigned mult = 1;
  if (doc.contains("multiplicity")) {
    if (!doc["multiplicity"].is_number_unsigned()) throw InputError("points file: 'multiplicity' must be a positive integer");
    mult = doc["multiplicity"].get<unsigned>();
  }
  if (!doc.contains("points") || !doc["points"].is_array()) throw InputError("points file: 'points' must be an array");
  const auto& arr = doc["points"];
  if (arr.empty()) throw InputError("points file: 'points' is empty");
  std::vector<ProjPoint> pts;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "points[" + std::to_string(i) + "]";
    if (!arr[i].is_array()) throw InputError(where + ": expected an array of coordinates");
    if (arr[i].size() != dim + 1)
      throw InputError(where + ": expected " + std::to_string(dim + 1) + " coordinates, found " + std::to_string(arr[i].size()));
    std::vector<Rational> coords;
    for (std::size_t j = 0; j < arr[i].size(); ++j) {
      const auto& v = arr[i][j];
      const std::string at = where + "[" + std::to_string(j) + "]";
      try {
        if (v.is_string()) coords.push_back(parse_rational(v.get<std::string>()));
        else if (v.is_number_integer()) coords.emplace_back(static_cast<long>(v.get<std::int64_t>()));
        else throw InputError("expected a rational string or integer");
      } catch (const InputError& e) {
        throw InputError(at + ": " + e.what());
      }
    }
    try {
      pts.emplace_back(std::move(coords));
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  return FatPointScheme(dim, std::move(pts), mult);
}

inline FatPointScheme load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open points file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_points(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline std::string points_to_json(const FatPointScheme& sch) {
  nlohmann::json doc;
  doc["dim"] = sch.dim();
  doc["multiplicity"] = sch.multiplicity();
  doc["points"] = nlohmann::json::array();
  for (const auto& p : sch.points()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& q : p.coords()) row.push_back(to_string(q));
    doc["points"].push_back(row);
  }
  return doc.dump(2);
}

/// Six points (t^2 : t : 1), t = 1..6, on the conic x1*x3 = x2^2.
inline FatPointScheme conic_scheme(unsigned m = 1) {
  std::vector<ProjPoint> pts;
  for (long t = 1; t <= 6; ++t) pts.emplace_back(std::vector<Rational>{Rational(t * t), Rational(t), Rational(1)});
  return FatPointScheme(2, std::move(pts), m);
}

}  // namespace starshape
