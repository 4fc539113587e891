/**
 * @file invariants.hpp
 * @brief Initial degrees, Waldschmidt and regularity estimates, and the
 *        end-to-end check of the limiting simplex for star configurations.
 */
#pragma once

#include "starshape/gin.hpp"
#include "starshape/scheme.hpp"
#include "starshape/shape.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace starshape {

/// Least d with a nonzero form of degree d vanishing to order m on the scheme.
inline unsigned alpha(const FatPointScheme& sch) {
  for (unsigned d = 0;; ++d)
    if (hf_symbolic(sch, d) > 0) return d;
}

/// Same number read off a Hilbert table.
inline unsigned alpha(const GinResult& res) {
  for (const auto& row : res.hf_table)
    if (row.dim_ideal > 0) return row.d;
  throw InternalError("Hilbert table has no nonzero ideal degree");
}

/// Largest degree of a minimal generator of the gin.
inline unsigned regularity(const GinResult& res) { return res.min_generators.max_generator_degree(); }

/// Axis thresholds t_1..t_n of the Artinian reduction.
inline std::vector<unsigned> thresholds(const GinResult& res) {
  std::vector<unsigned> t;
  for (std::size_t i = 1; i <= res.n; ++i) {
    auto p = pure_power_threshold(res.artinian, i);
    if (!p) throw InternalError("Artinian reduction lacks a pure power of x_" + std::to_string(i));
    t.push_back(*p);
  }
  return t;
}

struct InvariantRow {
  unsigned m = 0;
  unsigned alpha = 0;
  std::vector<unsigned> t;
  unsigned reg = 0;
  std::size_t colength = 0;
  std::optional<Rational> area;  ///< area of Q of the scaled shape, n = 2
};

inline InvariantRow invariant_row(const GinResult& res) {
  InvariantRow row{res.m, alpha(res), thresholds(res), regularity(res), res.colength, std::nullopt};
  if (res.n == 2) row.area = q_area_2d(scaled(shape_of(res), res.m));
  return row;
}

struct RatioSequence {
  std::vector<Rational> values;
  std::vector<Rational> running_min;
  Rational min() const { return running_min.back(); }
  bool nonincreasing() const {
    for (std::size_t i = 1; i < values.size(); ++i)
      if (values[i] > values[i - 1]) return false;
    return true;
  }
};

inline RatioSequence ratio_sequence(const std::vector<InvariantRow>& rows, const std::function<unsigned(const InvariantRow&)>& f) {
  if (rows.empty()) throw InputError("need at least one row");
  RatioSequence out;
  for (const auto& r : rows) {
    Rational q(f(r), r.m);
    q.canonicalize();
    out.values.push_back(q);
    out.running_min.push_back(out.running_min.empty() ? q : std::min(q, out.running_min.back()));
  }
  return out;
}

/// alpha(I^(m))/m and its running minimum, an upper bound for the Waldschmidt constant.
inline RatioSequence waldschmidt_estimate(const std::vector<InvariantRow>& rows) {
  return ratio_sequence(rows, [](const InvariantRow& r) { return r.alpha; });
}

/// reg(I^(m))/m; its limit is the asymptotic regularity.
inline RatioSequence asreg_estimate(const std::vector<InvariantRow>& rows) {
  return ratio_sequence(rows, [](const InvariantRow& r) { return r.reg; });
}

using GinProvider = std::function<GinResult(const FatPointScheme&)>;

inline GinProvider default_provider(const GinOptions& opt = {}) {
  return [opt](const FatPointScheme& sch) { return compute_gin(sch, opt); };
}

struct InvariantReport {
  std::size_t n = 0;
  std::optional<std::size_t> s;
  std::size_t num_points = 0;
  std::vector<InvariantRow> rows;
  RatioSequence waldschmidt;
  RatioSequence asreg;
  std::map<std::string, bool> verdicts;
  std::vector<std::string> notes;

  bool passed() const {
    for (const auto& [name, ok] : verdicts)
      if (!ok) return false;
    return true;
  }
};

namespace detail {

inline InvariantReport base_report(const std::vector<ProjPoint>& points, std::size_t n, unsigned m_max,
                                   const GinProvider& gin) {
  if (m_max < 1) throw InputError("m_max must be at least 1");
  InvariantReport rep;
  rep.n = n;
  rep.num_points = points.size();
  for (unsigned m = 1; m <= m_max; ++m) rep.rows.push_back(invariant_row(gin(FatPointScheme(n, points, m))));
  rep.waldschmidt = waldschmidt_estimate(rep.rows);
  rep.asreg = asreg_estimate(rep.rows);

  bool alpha_t1 = true, reg_tn = true, sub = true;
  for (const auto& r : rep.rows) {
    alpha_t1 = alpha_t1 && r.alpha == r.t.front();
    reg_tn = reg_tn && r.reg == r.t.back();
  }
  for (const auto& a : rep.rows)
    for (const auto& b : rep.rows)
      if (a.m + b.m <= m_max && rep.rows[a.m + b.m - 1].alpha > a.alpha + b.alpha) {
        sub = false;
        rep.notes.push_back("alpha(" + std::to_string(a.m + b.m) + ") exceeds alpha(" + std::to_string(a.m) +
                            ") + alpha(" + std::to_string(b.m) + ")");
      }
  rep.verdicts["alpha_is_t1"] = alpha_t1;
  rep.verdicts["reg_is_tn"] = reg_tn;
  rep.verdicts["subadditive"] = sub;
  return rep;
}

/// Axis bounds and interior avoidance against w for every computed power.
inline void simplex_checks(InvariantReport& rep, const SimplexW& w, const std::vector<GinResult>& gins) {
  bool v2 = true, v3 = true;
  for (const auto& res : gins) {
    const Shape sh = scaled(shape_of(res), res.m);
    const auto t = all_intercepts(sh);
    for (std::size_t i = 0; i < rep.n; ++i)
      if (t[i] < w.a[i]) {
        v2 = false;
        rep.notes.push_back("m=" + std::to_string(res.m) + ": t_" + std::to_string(i + 1) + "/m = " + to_string(t[i]) +
                            " < " + to_string(w.a[i]));
      }
    if (!outside_interior_W(sh, w)) {
      v3 = false;
      rep.notes.push_back("m=" + std::to_string(res.m) + ": a scaled generator lies inside W");
    }
  }
  rep.verdicts["V2"] = v2;
  rep.verdicts["V3"] = v3;
}

}  // namespace detail

/**
 * Computes gin(I^(m)) of star(n, s) for m = 1..m_max and checks
 *  V1 t_i(n-i+1) = s-i+1,
 *  V2 t_i(m)/m >= a_i,
 *  V3 no scaled generator inside W,
 *  V4 colength(m) = binom(s,n) binom(n+m-1,n),
 *  V5 (n = 2) area of Q at least vol W and nonincreasing in m.
 * Failures land in verdicts; only computation errors throw.
 */
inline InvariantReport verify_theorem(std::size_t n, std::size_t s, unsigned m_max, const StarMode& mode,
                                      const GinProvider& gin = default_provider()) {
  if (s < n) throw InputError("need s >= n");
  if (m_max < n) throw InputError("m_max must be at least n");
  const auto star = build_star(n, s, mode);
  std::vector<GinResult> gins;
  const GinProvider keep = [&](const FatPointScheme& sch) {
    gins.push_back(gin(sch));
    return gins.back();
  };
  auto rep = detail::base_report(star.points, n, m_max, keep);
  rep.s = s;
  const auto w = w_simplex(n, s);

  bool v1 = true;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& row = rep.rows[n - i];
    if (row.t[i - 1] != s - i + 1) {
      v1 = false;
      rep.notes.push_back("t_" + std::to_string(i) + "(" + std::to_string(n - i + 1) + ") = " +
                          std::to_string(row.t[i - 1]) + ", expected " + std::to_string(s - i + 1));
    }
  }
  rep.verdicts["V1"] = v1;
  detail::simplex_checks(rep, w, gins);

  bool v4 = true;
  for (const auto& r : rep.rows)
    if (r.colength != binomial_size(s, n) * binomial_size(n + r.m - 1, n)) v4 = false;
  rep.verdicts["V4"] = v4;

  if (n == 2) {
    bool v5 = true;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      if (*rep.rows[i].area < w.volume) v5 = false;
      if (i > 0 && *rep.rows[i].area > *rep.rows[i - 1].area) {
        v5 = false;
        rep.notes.push_back("area of Q increases from m=" + std::to_string(i) + " to m=" + std::to_string(i + 1));
      }
    }
    rep.verdicts["V5"] = v5;
  }

  for (const auto& r : rep.rows)
    if (r.t.back() != r.m * (s - n + 1))
      rep.notes.push_back("observation: t_n(" + std::to_string(r.m) + ") = " + std::to_string(r.t.back()) +
                          " differs from m(s-n+1) = " + std::to_string(r.m * (s - n + 1)));
  return rep;
}

/**
 * Same pipeline for an arbitrary point set. With expected axis lengths the
 * V2/V3 checks run against that simplex, V4 checks the fat point degree,
 * and "volume" checks that the product of the axis lengths equals the
 * number of points (n! vol of the limiting complement is the degree of Z).
 * For n = 2, "V5" checks that every area of Q is at least that of the
 * expected triangle.
 */
inline InvariantReport analyze_points(const FatPointScheme& base, unsigned m_max,
                                      const std::optional<std::vector<Rational>>& expect_vertices,
                                      const GinProvider& gin = default_provider()) {
  std::vector<GinResult> gins;
  const GinProvider keep = [&](const FatPointScheme& sch) {
    gins.push_back(gin(sch));
    return gins.back();
  };
  auto rep = detail::base_report(base.points(), base.dim(), m_max, keep);
  bool v4 = true;
  for (const auto& r : rep.rows)
    if (r.colength != base.points().size() * binomial_size(base.dim() + r.m - 1, base.dim())) v4 = false;
  rep.verdicts["V4"] = v4;
  if (!expect_vertices) return rep;

  if (expect_vertices->size() != base.dim())
    throw InputError("expected " + std::to_string(base.dim()) + " vertex coordinates, got " +
                     std::to_string(expect_vertices->size()));
  const auto w = simplex_from_axes(*expect_vertices);
  detail::simplex_checks(rep, w, gins);
  Rational prod = 1;
  for (const auto& a : w.a) prod *= a;
  rep.verdicts["volume"] = prod == Rational(static_cast<long>(base.points().size()));
  if (!rep.verdicts["volume"])
    rep.notes.push_back("product of expected axis lengths " + to_string(prod) + " differs from the number of points " +
                        std::to_string(base.points().size()));
  if (base.dim() == 2) {
    bool v5 = true;
    for (const auto& r : rep.rows)
      if (*r.area < w.volume) v5 = false;
    rep.verdicts["V5"] = v5;
  }
  return rep;
}

}  // namespace starshape
