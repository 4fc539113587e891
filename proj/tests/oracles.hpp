// Slow, independent reference implementations used only by the tests.
#pragma once

#include "starshape/starshape.hpp"

#include <map>
#include <optional>
#include <vector>

namespace oracle {

using starshape::Rational;
using starshape::RatMatrix;
using starshape::RatVector;

/// Textbook Gaussian elimination on rationals, row by row.
inline std::size_t naive_rank(RatMatrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(r, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

/// Unique solution of a square system, if any (Cramer-free plain elimination).
inline std::optional<RatVector> solve_square(RatMatrix a, RatVector b) {
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    a.swap_rows(p, c);
    std::swap(b[p], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(c, c);
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(c, j);
      b[i] -= f * b[c];
    }
  }
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a(i, i);
  return x;
}

/**
 * Feasibility of {x >= 0 : A x (rel) b} by vertex enumeration: the region
 * is pointed, so it is nonempty iff one of its basic solutions is feasible.
 */
inline bool brute_feasible(const RatMatrix& a, const RatVector& b, const std::vector<starshape::Relation>& rel) {
  using starshape::Relation;
  const std::size_t k = a.cols();
  // all constraints as rows g.x (rel) h, including x_j >= 0
  std::vector<RatVector> g;
  RatVector h;
  std::vector<Relation> r;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    g.emplace_back(a.row(i).begin(), a.row(i).end());
    h.push_back(b[i]);
    r.push_back(rel[i]);
  }
  for (std::size_t j = 0; j < k; ++j) {
    RatVector e(k);
    e[j] = 1;
    g.push_back(e);
    h.push_back(0);
    r.push_back(Relation::GreaterEqual);
  }
  auto ok = [&](const RatVector& x) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      Rational v = 0;
      for (std::size_t j = 0; j < k; ++j) v += g[i][j] * x[j];
      if (r[i] == Relation::LessEqual && v > h[i]) return false;
      if (r[i] == Relation::GreaterEqual && v < h[i]) return false;
      if (r[i] == Relation::Equal && v != h[i]) return false;
    }
    return true;
  };
  if (k == 0) return ok({});
  bool found = false;
  starshape::detail::for_each_subset(g.size(), k, [&](const std::vector<std::size_t>& idx) {
    if (found) return;
    RatMatrix m(k, k);
    RatVector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) m(i, j) = g[idx[i]][j];
      rhs[i] = h[idx[i]];
    }
    if (auto x = solve_square(m, rhs); x && ok(*x)) found = true;
  });
  return found;
}

/**
 * Membership of q in conv(points) + octant through the separation side:
 * q is outside iff some weight w >= 0, sum w = 1, has w.q < min_g w.g.
 * The best w is a vertex of the arrangement cut out by w_i = 0 and
 * w.(g_a - g_b) = 0 inside the simplex; all of them are enumerated.
 * Works for 2 and 3 coordinates.
 */
inline bool separation_contains(const std::vector<std::vector<Rational>>& pts, const std::vector<Rational>& q) {
  const std::size_t n = q.size();
  std::vector<RatVector> planes;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector e(n);
    e[i] = 1;
    planes.push_back(e);
  }
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      RatVector d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = pts[a][i] - pts[b][i];
      planes.push_back(d);
    }
  Rational best;
  bool any = false;
  starshape::detail::for_each_subset(planes.size(), n - 1, [&](const std::vector<std::size_t>& idx) {
    RatMatrix m(n, n);
    RatVector rhs(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = planes[idx[i]][j];
    for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = 1;
    rhs[n - 1] = 1;
    auto w = solve_square(m, rhs);
    if (!w) return;
    for (const auto& x : *w)
      if (x < 0) return;
    std::optional<Rational> low;
    for (const auto& g : pts) {
      Rational v = 0;
      for (std::size_t i = 0; i < n; ++i) v += (*w)[i] * (g[i] - q[i]);
      if (!low || v < *low) low = v;
    }
    if (!any || *low > best) best = *low;
    any = true;
  });
  return !any || best <= 0;
}

/**
 * Area of Q for two coordinates: integrate the lower boundary height h(x)
 * with the trapezoid rule on the generator abscissae, where h is found by
 * brute force over single points and pairs.
 */
inline Rational trapezoid_area(const std::vector<std::vector<Rational>>& pts) {
  std::vector<Rational> xs{Rational(0)};
  for (const auto& p : pts) xs.push_back(p[0]);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  auto height = [&](const Rational& x) {
    std::optional<Rational> h;
    auto take = [&](const Rational& y) {
      if (!h || y < *h) h = y;
    };
    for (const auto& p : pts)
      if (p[0] <= x) take(p[1]);
    for (const auto& a : pts)
      for (const auto& b : pts)
        if (a[0] < x && x < b[0]) take(a[1] + (b[1] - a[1]) * (x - a[0]) / (b[0] - a[0]));
    return *h;
  };
  Rational area = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) area += (xs[i + 1] - xs[i]) * (height(xs[i]) + height(xs[i + 1])) / 2;
  return area;
}

/// Sparse polynomial in k variables.
using Poly = std::map<std::vector<unsigned>, Rational>;

inline Poly derivative(const Poly& f, std::size_t var) {
  Poly out;
  for (const auto& [e, c] : f) {
    if (e[var] == 0) continue;
    auto d = e;
    --d[var];
    out[d] += c * static_cast<long>(e[var]);
  }
  return out;
}

inline Rational evaluate(const Poly& f, const std::vector<Rational>& p) {
  Rational v = 0;
  for (const auto& [e, c] : f) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= p[i];
    v += t;
  }
  return v;
}

inline Poly multiply(const Poly& f, const Poly& g) {
  Poly out;
  for (const auto& [a, x] : f)
    for (const auto& [b, y] : g) {
      auto e = a;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += b[i];
      out[e] += x * y;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/**
 * Condition matrix by repeated single-variable differentiation: rows are
 * (point, beta) with |beta| = order, beta and columns in descending revlex.
 */
inline RatMatrix differentiation_conditions(const starshape::FatPointScheme& sch, unsigned order, unsigned d) {
  const auto cols = starshape::monomials_of_degree(sch.num_vars(), d);
  const auto betas = starshape::monomials_of_degree(sch.num_vars(), order);
  RatMatrix out(sch.points().size() * betas.size(), cols.size());
  std::size_t row = 0;
  for (const auto& p : sch.points())
    for (const auto& beta : betas) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        Poly f{{cols[c].exponents(), Rational(1)}};
        for (std::size_t i = 0; i < beta.size(); ++i)
          for (unsigned k = 0; k < beta[i]; ++k) f = derivative(f, i);
        out(row, c) = evaluate(f, p.coords());
      }
      ++row;
    }
  return out;
}

}  // namespace oracle
