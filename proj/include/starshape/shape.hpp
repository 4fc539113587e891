/**
 * @file shape.hpp
 * @brief Newton polytopes of Artinian monomial ideals and the simplex W.
 *
 * P(J) = conv(generator points) + octant; Q(J) is the closure of the
 * octant minus P(J). A Shape stores lattice points and a scale factor,
 * so scaled shapes stay exact.
 */
#pragma once

#include "starshape/exact_math.hpp"
#include "starshape/gin.hpp"
#include "starshape/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace starshape {

class Shape {
 public:
  Shape(std::size_t num_vars, std::vector<ExponentVector> lattice_points, Rational scale = 1)
      : n_(num_vars), lattice_(std::move(lattice_points)), scale_(std::move(scale)) {
    if (lattice_.empty()) throw InputError("shape needs at least one generator point");
    if (scale_ <= 0) throw InputError("shape scale must be positive");
    for (const auto& p : lattice_)
      if (p.size() != n_) throw InputError("generator point " + p.to_string() + " has wrong dimension");
    for (std::size_t i = 0; i < lattice_.size(); ++i)
      for (std::size_t j = 0; j < lattice_.size(); ++j)
        if (i != j && lattice_[i].divides(lattice_[j]))
          throw InputError("generator points " + lattice_[i].to_string() + " and " + lattice_[j].to_string() +
                           " are comparable");
  }

  std::size_t num_vars() const { return n_; }
  const std::vector<ExponentVector>& lattice_points() const { return lattice_; }
  const Rational& scale() const { return scale_; }

  std::vector<std::vector<Rational>> points() const {
    std::vector<std::vector<Rational>> out;
    for (const auto& p : lattice_) {
      std::vector<Rational> q(n_);
      for (std::size_t i = 0; i < n_; ++i) q[i] = scale_ * p[i];
      out.push_back(std::move(q));
    }
    return out;
  }

 private:
  std::size_t n_;
  std::vector<ExponentVector> lattice_;
  Rational scale_;
};

inline Shape shape_of(const MonomialIdeal& j) { return Shape(j.num_vars(), j.generators()); }
inline Shape shape_of(const GinResult& res) { return shape_of(res.artinian); }

inline Shape scaled(const Shape& sh, unsigned m) {
  if (m < 1) throw InputError("scale divisor must be at least 1");
  return Shape(sh.num_vars(), sh.lattice_points(), sh.scale() / m);
}

/// min t with t*e_i in P, i is 1-based; nullopt when no pure power exists.
inline std::optional<Rational> axis_intercept(const Shape& sh, std::size_t i) {
  if (i < 1 || i > sh.num_vars()) throw InputError("axis index out of range");
  std::optional<unsigned> best;
  for (const auto& p : sh.lattice_points())
    if (p.degree() == p[i - 1] && (!best || p.degree() < *best)) best = p.degree();
  if (!best) return std::nullopt;
  return Rational(sh.scale() * *best);
}

inline std::vector<Rational> all_intercepts(const Shape& sh) {
  std::vector<Rational> t;
  for (std::size_t i = 1; i <= sh.num_vars(); ++i) {
    auto a = axis_intercept(sh, i);
    if (!a) throw InputError("Q is unbounded: no pure power of x_" + std::to_string(i));
    t.push_back(*a);
  }
  return t;
}

/// LP: some convex combination of the points lies coordinatewise below q.
inline bool contains(const Shape& sh, std::span<const Rational> q) {
  const std::size_t n = sh.num_vars();
  if (q.size() != n) throw InputError("query point has wrong dimension");
  const auto pts = sh.points();
  RatMatrix a(n + 1, pts.size());
  std::vector<Rational> b(n + 1);
  std::vector<Relation> rel(n + 1, Relation::LessEqual);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    a(0, j) = 1;
    for (std::size_t i = 0; i < n; ++i) a(i + 1, j) = pts[j][i];
  }
  b[0] = 1;
  rel[0] = Relation::Equal;
  for (std::size_t i = 0; i < n; ++i) b[i + 1] = q[i];
  return lp_feasible(a, b, rel, std::vector<bool>(pts.size(), true)).feasible;
}

/// Boundary chain of P (n = 2) from (0, t_2) to (t_1, 0).
inline std::vector<std::vector<Rational>> hull_chain_2d(const Shape& sh) {
  if (sh.num_vars() != 2) throw InputError("hull chain needs a two-variable shape");
  all_intercepts(sh);
  auto pts = sh.points();
  std::sort(pts.begin(), pts.end(), [](const auto& u, const auto& v) { return u[0] < v[0]; });
  std::vector<std::vector<Rational>> chain;
  for (auto& p : pts) {
    while (chain.size() >= 2) {
      const auto& o = chain[chain.size() - 2];
      const auto& a = chain.back();
      const Rational cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]);
      if (cross > 0) break;
      chain.pop_back();
    }
    chain.push_back(std::move(p));
  }
  return chain;
}

/// Exact area of Q for n = 2.
inline Rational q_area_2d(const Shape& sh) {
  const auto chain = hull_chain_2d(sh);
  std::vector<std::vector<Rational>> poly{{Rational(0), Rational(0)}};
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) poly.push_back(*it);
  Rational twice = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    twice += p[0] * q[1] - q[0] * p[1];
  }
  return abs(twice) / 2;
}

struct VolumeEstimate {
  double estimate = 0;
  double stderr_ = 0;
};

/**
 * Monte-Carlo volume of Q (n >= 3): uniform samples in the simplex spanned
 * by the axis intercepts, which contains Q. Samples are drawn in chunks of
 * 256, each from its own child seed.
 */
inline VolumeEstimate q_volume_estimate(const Shape& sh, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = sh.num_vars();
  if (n < 3) throw InputError("volume estimate is for three or more variables; use q_area_2d");
  if (samples == 0) throw InputError("need at least one sample");
  const auto t = all_intercepts(sh);
  double simplex = 1;
  for (std::size_t i = 0; i < n; ++i) simplex *= t[i].get_d() / static_cast<double>(i + 1);
  std::size_t outside = 0;
  constexpr std::size_t chunk = 256;
  std::vector<double> e(n + 1);
  std::vector<Rational> q(n);
  for (std::size_t start = 0; start < samples; start += chunk) {
    SeededRng rng(mix_seed(seed ^ (start / chunk)));
    for (std::size_t k = start; k < std::min(samples, start + chunk); ++k) {
      double sum = 0;
      for (auto& x : e) {
        x = -std::log1p(-rng.uniform01());
        sum += x;
      }
      for (std::size_t i = 0; i < n; ++i) q[i] = t[i] * Rational(e[i] / sum);
      if (!contains(sh, q)) ++outside;
    }
  }
  const double p = static_cast<double>(outside) / static_cast<double>(samples);
  return {simplex * p, simplex * std::sqrt(p * (1 - p) / static_cast<double>(samples))};
}

/// Simplex with vertices 0 and a_i e_i, a_i = (s-i+1)/(n-i+1).
struct SimplexW {
  std::size_t n = 0;
  std::size_t s = 0;
  std::vector<Rational> a;
  Rational volume;

  std::vector<std::vector<Rational>> vertices() const {
    std::vector<std::vector<Rational>> v{std::vector<Rational>(n, Rational(0))};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> p(n, Rational(0));
      p[i] = a[i];
      v.push_back(std::move(p));
    }
    return v;
  }
};

inline SimplexW w_simplex(std::size_t n, std::size_t s) {
  if (n < 1) throw InputError("n must be at least 1");
  if (s < n) throw InputError("need s >= n");
  SimplexW w{n, s, {}, Rational(binomial(s, n), factorial(n))};
  w.volume.canonicalize();
  for (std::size_t i = 1; i <= n; ++i) {
    Rational ai(static_cast<long>(s - i + 1), static_cast<long>(n - i + 1));
    ai.canonicalize();
    w.a.push_back(ai);
  }
  return w;
}

/// Simplex with the given axis lengths, for shapes that are not star configurations.
inline SimplexW simplex_from_axes(std::vector<Rational> a) {
  if (a.empty()) throw InputError("need at least one axis length");
  Rational prod = 1;
  for (const auto& x : a) {
    if (x <= 0) throw InputError("axis lengths must be positive");
    prod *= x;
  }
  const std::size_t n = a.size();
  return SimplexW{n, 0, std::move(a), prod / Rational(factorial(n))};
}

/// Sum of g_i / a_i over the coordinates of a point.
inline Rational w_value(std::span<const Rational> g, const SimplexW& w) {
  Rational v = 0;
  for (std::size_t i = 0; i < w.n; ++i) v += g[i] / w.a[i];
  return v;
}

/// True iff no generator point lies in the interior of W.
inline bool outside_interior_W(const Shape& sh, const SimplexW& w) {
  if (sh.num_vars() != w.n) throw InputError("shape and simplex dimensions differ");
  for (const auto& g : sh.points())
    if (w_value(g, w) < 1) return false;
  return true;
}

struct ShapeReport {
  std::size_t n = 0;
  unsigned m = 1;
  std::vector<Rational> intercepts;  ///< of the scaled shape
  std::vector<std::vector<Rational>> scaled_points;
  std::optional<Rational> area;          ///< n = 2
  std::optional<VolumeEstimate> volume;  ///< n >= 3
  std::optional<bool> avoids_w;
};

inline ShapeReport shape_report(const GinResult& res, const SimplexW* w = nullptr, std::size_t samples = 2000,
                                std::uint64_t seed = 1) {
  const Shape sh = scaled(shape_of(res), res.m);
  ShapeReport r;
  r.n = res.n;
  r.m = res.m;
  r.intercepts = all_intercepts(sh);
  r.scaled_points = sh.points();
  if (res.n == 2)
    r.area = q_area_2d(sh);
  else if (res.n >= 3 && samples > 0)
    r.volume = q_volume_estimate(sh, samples, seed);
  if (w) r.avoids_w = outside_interior_W(sh, *w);
  return r;
}

}  // namespace starshape
