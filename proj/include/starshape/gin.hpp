/**
 * @file gin.hpp
 * @brief Revlex generic initial ideals of symbolic powers of point schemes.
 *
 * A monomial mu of degree d is a leading term of some form in I_d exactly
 * when the condition column of mu is a linear combination of the columns
 * of revlex-smaller monomials. Scanning condition columns from the
 * smallest monomial upward, the pivots are the standard monomials and
 * every other monomial lies in the initial ideal.
 *
 * Two engines implement this:
 *  - gin_degree() works on one homogeneous degree slice;
 *  - compute_gin() dehomogenizes at x_{n+1} (which vanishes at no point
 *    after a generic change) and runs one scan over affine monomials in
 *    graded revlex order. Degree-d homogeneous monomials u*x_{n+1}^(d-|u|)
 *    sort exactly like the affine monomials u of degree <= d, so one
 *    elimination serves every degree at once.
 * The coordinate change is applied to the points, never to the forms.
 */
#pragma once

#include "starshape/exact_math.hpp"
#include "starshape/monomial.hpp"
#include "starshape/scheme.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace starshape {

struct HfRow {
  unsigned d = 0;
  std::size_t dim_ideal = 0;    ///< dim I^(m)_d
  std::size_t hf_quotient = 0;  ///< HF(S/I^(m), d)
  friend bool operator==(const HfRow&, const HfRow&) = default;
};

struct GinResult {
  std::size_t n = 0;
  unsigned m = 0;
  std::size_t num_points = 0;
  MonomialIdeal min_generators{1};  ///< in x_1..x_{n+1}
  MonomialIdeal artinian{1};        ///< same generators with x_{n+1} dropped
  std::vector<HfRow> hf_table;      ///< d = 0..stop_degree
  unsigned stop_degree = 0;
  std::size_t colength = 0;
  std::pair<std::uint64_t, std::uint64_t> seeds_used{0, 0};

  /// |Z| * binom(n+m-1, n), the length of S/I^(m).
  std::size_t fat_point_degree() const { return num_points * binomial_size(n + m - 1, n); }
};

struct GinOptions {
  std::uint64_t seed = 0x5eed;
  std::int64_t coeff_bound = 10;
  unsigned max_attempts = 4;
  std::optional<unsigned> degree_cap;  ///< defaults to m * (|Z| + n)
};

/// Points g.p with primitive integer coordinates; throws if g is singular.
inline std::vector<std::vector<Integer>> transform_points(const FatPointScheme& sch, const RatMatrix& g) {
  const std::size_t k = sch.num_vars();
  if (g.rows() != k || g.cols() != k) throw InputError("coordinate change has the wrong size");
  if (determinant(g) == 0) throw InputError("coordinate change is singular");
  std::vector<std::vector<Integer>> out;
  for (const auto& p : sch.points()) out.push_back(ProjPoint::primitive_integer(multiply(g, p.coords())));
  return out;
}

namespace detail {

/// Mask over @p candidates (descending revlex): true = in the initial ideal.
/// Candidates must include every standard monomial of degree d.
inline std::vector<bool> initial_mask(std::span<const std::vector<Integer>> points, unsigned m, unsigned d,
                                      std::span<const ExponentVector> candidates) {
  const IntMatrix c = integer_conditions(points, m, d, candidates);
  std::vector<std::size_t> ascending(candidates.size());
  for (std::size_t i = 0; i < ascending.size(); ++i) ascending[i] = candidates.size() - 1 - i;
  const auto pivots = independent_columns(c, ascending);
  std::vector<bool> in_ideal(candidates.size(), true);
  for (auto p : pivots) in_ideal[p] = false;
  return in_ideal;
}

}  // namespace detail

/// Degree-d monomials of in(g . I^(m)), in descending revlex order.
inline std::vector<ExponentVector> gin_degree(const FatPointScheme& sch, unsigned d, const RatMatrix& g) {
  const auto pts = transform_points(sch, g);
  const auto cols = monomials_of_degree(sch.num_vars(), d);
  const auto mask = detail::initial_mask(pts, sch.multiplicity(), d, cols);
  std::vector<ExponentVector> out;
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (mask[i]) out.push_back(cols[i]);
  return out;
}

/**
 * Same set as gin_degree, the long way round: kernel basis of the
 * transformed condition matrix, reduced with columns in descending revlex
 * order, pivots read off as leading monomials.
 */
inline std::vector<ExponentVector> gin_degree_via_kernel(const FatPointScheme& sch, unsigned d, const RatMatrix& g) {
  const auto pts = transform_points(sch, g);
  std::vector<ProjPoint> moved;
  for (const auto& p : pts) moved.emplace_back(std::vector<Rational>(p.begin(), p.end()));
  const FatPointScheme image(sch.dim(), std::move(moved), sch.multiplicity());
  const auto basis = symbolic_basis(image, d);
  const auto cols = monomials_of_degree(sch.num_vars(), d);
  RatMatrix rows(basis.size(), cols.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) rows(i, j) = basis[i][j];
  const auto [pivots, reduced] = rref(rows);
  std::vector<ExponentVector> out;
  for (auto p : pivots) out.push_back(cols[p]);
  std::sort(out.begin(), out.end(), RevlexGreater{});
  return out;
}

namespace detail {

struct Staircase {
  std::vector<ExponentVector> generators;         ///< minimal, affine (n variables)
  std::vector<std::size_t> new_standard;          ///< number of standard monomials of each degree
  unsigned stop_degree = 0;
};

/**
 * Graded-revlex scan of affine monomials against the order-<m derivative
 * functionals at each point a = q'/q_{n+1}. Every functional row is scaled
 * by q_{n+1}^chart_power so all entries are integers; the scan gives up
 * (nullopt) if it needs a monomial of degree above chart_power.
 */
inline std::optional<Staircase> affine_staircase(std::span<const std::vector<Integer>> points, unsigned m,
                                                 std::size_t target, unsigned cap, unsigned chart_power) {
  const std::size_t k = points.front().size();
  const std::size_t n = k - 1;
  std::vector<ExponentVector> betas;
  for (unsigned e = 0; e < m; ++e)
    for (auto& b : monomials_of_degree(n, e)) betas.push_back(std::move(b));
  const std::size_t rows = points.size() * betas.size();
  if (rows != target) throw InternalError("condition count differs from the fat point degree");

  std::vector<std::vector<std::vector<Integer>>> pw(points.size(), std::vector<std::vector<Integer>>(k));
  for (std::size_t p = 0; p < points.size(); ++p)
    for (std::size_t i = 0; i < k; ++i) {
      auto& v = pw[p][i];
      v.resize(chart_power + 1);
      v[0] = 1;
      for (unsigned e = 1; e <= chart_power; ++e) v[e] = v[e - 1] * points[p][i];
    }

  Staircase out;
  MonomialIdeal found(n);
  std::vector<std::size_t> pivot_rows;
  std::vector<std::vector<Integer>> pivot_cols;
  std::vector<Integer> pivot_vals{Integer(1)};
  std::vector<bool> used(rows, false), frozen(rows);
  std::vector<Integer> c(rows);
  Integer t;

  auto column = [&](const ExponentVector& a) {
    std::size_t r = 0;
    for (std::size_t p = 0; p < points.size(); ++p)
      for (const auto& b : betas) {
        Integer& v = c[r++];
        if (!b.divides(a)) {
          v = 0;
          continue;
        }
        v = pw[p][n][chart_power - a.degree() + b.degree()];
        for (std::size_t i = 0; i < n; ++i) {
          for (unsigned f = 0; f < b[i]; ++f) v *= a[i] - f;
          v *= pw[p][i][a[i] - b[i]];
        }
      }
  };

  for (unsigned d = 0;; ++d) {
    if (d > cap) throw InternalError("Hilbert function did not stabilize by degree " + std::to_string(cap));
    const bool full = pivot_rows.size() == rows;
    if (!full && d > chart_power) return std::nullopt;
    auto mons = monomials_of_degree(n, d);
    std::reverse(mons.begin(), mons.end());
    std::size_t fresh_standard = 0;
    bool grew = false;
    for (const auto& a : mons) {
      if (found.contains(a)) continue;
      if (pivot_rows.size() == rows) {
        out.generators.push_back(a);
        grew = true;
        continue;
      }
      column(a);
      std::fill(frozen.begin(), frozen.end(), false);
      for (std::size_t s = 0; s < pivot_rows.size(); ++s) {
        const std::size_t rk = pivot_rows[s];
        frozen[rk] = true;
        const Integer ck = c[rk];
        const auto& col = pivot_cols[s];
        for (std::size_t i = 0; i < rows; ++i) {
          if (frozen[i]) continue;
          t = pivot_vals[s + 1] * c[i];
          if (ck != 0) t -= col[i] * ck;
          mpz_divexact(c[i].get_mpz_t(), t.get_mpz_t(), pivot_vals[s].get_mpz_t());
        }
      }
      std::size_t pr = rows;
      for (std::size_t i = 0; i < rows; ++i)
        if (!used[i] && c[i] != 0) {
          pr = i;
          break;
        }
      if (pr == rows) {
        out.generators.push_back(a);
        grew = true;
      } else {
        used[pr] = true;
        pivot_rows.push_back(pr);
        pivot_vals.push_back(c[pr]);
        pivot_cols.push_back(c);
        ++fresh_standard;
      }
      // multiples of a fresh generator are skipped for the rest of this degree too
      if (grew) {
        found = MonomialIdeal(n, out.generators);
        grew = false;
      }
    }
    if (grew) found = MonomialIdeal(n, out.generators);
    out.new_standard.push_back(fresh_standard);
    if (d > 0 && fresh_standard == 0) {
      out.stop_degree = d;
      if (pivot_rows.size() != rows)
        throw InternalError("Hilbert function stabilized at " + std::to_string(pivot_rows.size()) + ", expected " +
                            std::to_string(rows));
      break;
    }
  }
  out.generators = MonomialIdeal(n, out.generators).generators();
  return out;
}

/// Runs affine_staircase, doubling the chart power until it suffices.
inline Staircase staircase(std::span<const std::vector<Integer>> points, unsigned m, std::size_t target, unsigned cap,
                           unsigned chart_power) {
  for (;;) {
    if (auto s = affine_staircase(points, m, target, cap, chart_power)) return *s;
    chart_power = std::min(cap, 2 * chart_power);
  }
}

inline bool chart_ok(std::span<const std::vector<Integer>> points) {
  return std::all_of(points.begin(), points.end(), [](const auto& q) { return q.back() != 0; });
}

}  // namespace detail

/**
 * Hilbert function of S/I^(m) in the scheme's own coordinates (after at most
 * a unimodular change of the last coordinate), d = 0..D where D is
 * the first degree at which it stops growing.
 */
inline std::vector<HfRow> hilbert_table(const FatPointScheme& sch, std::optional<unsigned> degree_cap = {}) {
  const unsigned m = sch.multiplicity();
  const unsigned cap = degree_cap.value_or(m * static_cast<unsigned>(sch.points().size() + sch.dim()));
  auto pts = integer_points(sch);
  // x_{n+1} + c x_1 + c^2 x_2 + ... + c^n x_n for the first c vanishing at no point;
  // each point rules out at most n values of c
  for (long c = 1; !detail::chart_ok(pts); ++c) {
    auto trial = pts;
    for (auto& q : trial) {
      Integer w = 1;
      for (std::size_t i = 0; i + 1 < q.size(); ++i) {
        w *= c;
        q.back() += w * q[i];
      }
    }
    if (detail::chart_ok(trial)) pts = std::move(trial);
  }
  const auto st = detail::staircase(pts, m, sch.degree(), cap, 2 * m + 2);
  std::vector<HfRow> table;
  std::size_t hf = 0;
  for (unsigned d = 0; d <= st.stop_degree; ++d) {
    hf += st.new_standard[d];
    const std::size_t all = binomial_size(d + sch.dim(), sch.dim());
    table.push_back({d, all - hf, hf});
  }
  return table;
}

inline bool verify_green(const GinResult& res) {
  for (const auto& g : res.min_generators.generators())
    if (g[g.size() - 1] != 0) return false;
  return true;
}

/// Every violated GinResult invariant; empty means all hold.
inline std::vector<std::string> gin_invariant_violations(const GinResult& res) {
  std::vector<std::string> bad;
  if (!is_borel_fixed(res.min_generators)) bad.push_back("generators are not Borel-fixed");
  if (!verify_green(res)) bad.push_back("a minimal generator involves the last variable");
  const auto len = colength(res.artinian);
  if (!len || *len != res.fat_point_degree())
    bad.push_back("Artinian colength " + (len ? std::to_string(*len) : std::string("inf")) + " differs from " +
                  std::to_string(res.fat_point_degree()));
  if (res.colength != res.fat_point_degree()) bad.push_back("recorded colength " + std::to_string(res.colength) + " is wrong");
  for (const auto& row : res.hf_table)
    if (hilbert_function(res.min_generators, row.d) != row.hf_quotient)
      bad.push_back("Hilbert function mismatch in degree " + std::to_string(row.d));
  if (res.hf_table.empty() || res.hf_table.back().d != res.stop_degree) bad.push_back("Hilbert table is incomplete");
  return bad;
}

namespace detail {

/// gin candidate for one coordinate change; nullopt if x_{n+1} vanishes at a moved point.
inline std::optional<GinResult> gin_for_change(const FatPointScheme& sch, const RatMatrix& g,
                                               const std::vector<HfRow>& table, unsigned cap) {
  const auto pts = transform_points(sch, g);
  if (!chart_ok(pts)) return std::nullopt;
  const unsigned top = table.back().d;
  const auto st = staircase(pts, sch.multiplicity(), sch.degree(), cap, std::max(1u, top));
  GinResult res;
  res.n = sch.dim();
  res.m = sch.multiplicity();
  res.num_points = sch.points().size();
  res.artinian = MonomialIdeal(sch.dim(), st.generators);
  std::vector<ExponentVector> full;
  for (const auto& u : res.artinian.generators()) {
    auto e = u.exponents();
    e.push_back(0);
    full.emplace_back(std::move(e));
  }
  res.min_generators = MonomialIdeal(sch.num_vars(), std::move(full));
  res.stop_degree = st.stop_degree;
  res.hf_table = table;
  res.colength = colength(res.artinian).value_or(0);
  return res;
}

}  // namespace detail

/**
 * gin(I^(m)) for the scheme's multiplicity m.
 *
 * The Hilbert table comes from the scheme's own coordinates; the staircase
 * comes from two coordinate changes drawn from independent child seeds.
 * An attempt is accepted only when both staircases agree and every
 * invariant (Borel, Green, colength, Hilbert agreement) holds.
 */
inline GinResult compute_gin(const FatPointScheme& sch, const GinOptions& opt = {}) {
  const unsigned cap = opt.degree_cap.value_or(sch.multiplicity() * static_cast<unsigned>(sch.points().size() + sch.dim()));
  const auto table = hilbert_table(sch, cap);
  SeededRng master(opt.seed);
  std::string last_problem = "no attempts made";
  for (unsigned attempt = 0; attempt < std::max(1u, opt.max_attempts); ++attempt) {
    const std::uint64_t s1 = master.next_u64();
    const std::uint64_t s2 = master.next_u64();
    SeededRng r1(s1), r2(s2);
    const auto g1 = random_invertible_matrix(r1, sch.num_vars(), opt.coeff_bound);
    const auto g2 = random_invertible_matrix(r2, sch.num_vars(), opt.coeff_bound);
    auto a = detail::gin_for_change(sch, g1, table, cap);
    if (!a) {
      last_problem = "last coordinate vanishes at a moved point";
      continue;
    }
    if (auto bad = gin_invariant_violations(*a); !bad.empty()) {
      last_problem = bad.front();
      continue;
    }
    auto b = detail::gin_for_change(sch, g2, table, cap);
    if (!b) {
      last_problem = "last coordinate vanishes at a moved point";
      continue;
    }
    if (!(a->min_generators == b->min_generators) || a->stop_degree != b->stop_degree) {
      last_problem = "two coordinate changes gave different initial ideals";
      continue;
    }
    a->seeds_used = {s1, s2};
    return *a;
  }
  throw GenericityError("no generic coordinate change after " + std::to_string(opt.max_attempts) +
                        " attempts: " + last_problem);
}

}  // namespace starshape
