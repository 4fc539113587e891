/**
 * @file monomial.hpp
 * @brief Exponent vectors, the degree-reverse-lexicographic order and
 *        monomial ideals viewed as staircases.
 *
 * Variables are x_1 > x_2 > ... > x_k; exponent index 0 is x_1.
 */
#pragma once

#include "starshape/exact_math.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace starshape {

class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::vector<unsigned> exps) : exps_(std::move(exps)) {
    degree_ = std::accumulate(exps_.begin(), exps_.end(), 0u);
  }
  ExponentVector(std::initializer_list<unsigned> exps) : ExponentVector(std::vector<unsigned>(exps)) {}

  static ExponentVector zero(std::size_t k) { return ExponentVector(std::vector<unsigned>(k, 0)); }
  static ExponentVector unit(std::size_t k, std::size_t i, unsigned power = 1) {
    std::vector<unsigned> e(k, 0);
    e[i] = power;
    return ExponentVector(std::move(e));
  }

  std::size_t size() const { return exps_.size(); }
  unsigned degree() const { return degree_; }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<unsigned>& exponents() const { return exps_; }

  bool divides(const ExponentVector& other) const {
    if (other.size() != size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  ExponentVector with(std::size_t i, unsigned value) const {
    auto e = exps_;
    e[i] = value;
    return ExponentVector(std::move(e));
  }

  /// Drops the last variable.
  ExponentVector truncated() const { return ExponentVector(std::vector<unsigned>(exps_.begin(), exps_.end() - 1)); }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < size(); ++i) s += (i ? "," : "") + std::to_string(exps_[i]);
    return s + "]";
  }

  friend bool operator==(const ExponentVector& a, const ExponentVector& b) { return a.exps_ == b.exps_; }
  /// Plain lexicographic order on the tuples, used only for container keys.
  friend auto operator<=>(const ExponentVector& a, const ExponentVector& b) { return a.exps_ <=> b.exps_; }

 private:
  std::vector<unsigned> exps_;
  unsigned degree_ = 0;
};

/**
 * Degree reverse-lexicographic comparison. Higher degree is greater; at
 * equal degree the vector with the smaller exponent at the last differing
 * position is greater.
 */
inline std::strong_ordering revlex_compare(const ExponentVector& u, const ExponentVector& v) {
  if (u.size() != v.size()) throw InputError("revlex_compare: variable counts differ");
  if (u.degree() != v.degree()) return u.degree() <=> v.degree();
  for (std::size_t i = u.size(); i-- > 0;)
    if (u[i] != v[i]) return v[i] <=> u[i];
  return std::strong_ordering::equal;
}

struct RevlexGreater {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const { return revlex_compare(a, b) > 0; }
};

/// All degree-d monomials in k variables, in descending revlex order.
inline std::vector<ExponentVector> monomials_of_degree(std::size_t k, unsigned d) {
  std::vector<ExponentVector> out;
  if (k == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  std::vector<unsigned> e(k, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == k) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (unsigned a = 0; a <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), RevlexGreater{});
  return out;
}

class MonomialIdeal {
 public:
  explicit MonomialIdeal(std::size_t num_vars) : num_vars_(num_vars) {}
  /// Builds the ideal and keeps only minimal generators.
  MonomialIdeal(std::size_t num_vars, std::vector<ExponentVector> gens) : num_vars_(num_vars) {
    for (const auto& g : gens)
      if (g.size() != num_vars) throw InputError("generator " + g.to_string() + " has wrong variable count");
    std::sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) {
      return a.degree() != b.degree() ? a.degree() < b.degree() : a < b;
    });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    for (auto& g : gens) {
      bool redundant = std::any_of(gens_.begin(), gens_.end(), [&](const auto& h) { return h.divides(g); });
      if (!redundant) gens_.push_back(std::move(g));
    }
    std::sort(gens_.begin(), gens_.end(), RevlexGreater{});
  }

  std::size_t num_vars() const { return num_vars_; }
  /// Minimal generators in descending revlex order.
  const std::vector<ExponentVector>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  bool contains(const ExponentVector& u) const {
    if (u.size() != num_vars_) throw InputError("membership: variable counts differ");
    return std::any_of(gens_.begin(), gens_.end(), [&](const auto& g) { return g.divides(u); });
  }

  unsigned max_generator_degree() const {
    unsigned d = 0;
    for (const auto& g : gens_) d = std::max(d, g.degree());
    return d;
  }

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.num_vars_ == b.num_vars_ && a.gens_ == b.gens_;
  }

 private:
  std::size_t num_vars_;
  std::vector<ExponentVector> gens_;
};

inline MonomialIdeal minimalize(std::size_t num_vars, std::vector<ExponentVector> gens) {
  return MonomialIdeal(num_vars, std::move(gens));
}

inline bool membership(const MonomialIdeal& j, const ExponentVector& u) { return j.contains(u); }

/// Strong stability: every Borel move x_j -> x_i (i < j) of a generator stays in the ideal.
inline bool is_borel_fixed(const MonomialIdeal& j) {
  for (const auto& g : j.generators())
    for (std::size_t b = 1; b < g.size(); ++b) {
      if (g[b] == 0) continue;
      for (std::size_t a = 0; a < b; ++a) {
        auto moved = g.with(b, g[b] - 1).with(a, g[a] + 1);
        if (!j.contains(moved)) return false;
      }
    }
  return true;
}

/// Number of degree-d monomials outside the ideal.
inline std::size_t hilbert_function(const MonomialIdeal& j, unsigned d) {
  std::size_t count = 0;
  for (const auto& u : monomials_of_degree(j.num_vars(), d))
    if (!j.contains(u)) ++count;
  return count;
}

/// Least p with x_i^p in the ideal (i is 1-based), if any.
inline std::optional<unsigned> pure_power_threshold(const MonomialIdeal& j, std::size_t i) {
  if (i < 1 || i > j.num_vars()) throw InputError("pure_power_threshold: variable index out of range");
  std::optional<unsigned> best;
  for (const auto& g : j.generators()) {
    if (g.degree() != g[i - 1]) continue;
    if (!best || g.degree() < *best) best = g.degree();
  }
  return best;
}

/// Number of standard monomials; nullopt when infinite.
inline std::optional<std::size_t> colength(const MonomialIdeal& j) {
  unsigned top = 0;
  for (std::size_t i = 1; i <= j.num_vars(); ++i) {
    auto p = pure_power_threshold(j, i);
    if (!p) return std::nullopt;
    top += *p - 1;
  }
  std::size_t total = 0;
  for (unsigned d = 0; d <= top; ++d) total += hilbert_function(j, d);
  return total;
}

/// Standard monomials of an Artinian ideal, all degrees.
inline std::vector<ExponentVector> standard_monomials(const MonomialIdeal& j) {
  std::vector<ExponentVector> out;
  unsigned top = 0;
  for (std::size_t i = 1; i <= j.num_vars(); ++i) {
    auto p = pure_power_threshold(j, i);
    if (!p) throw InputError("standard_monomials: ideal does not have finite colength");
    top += *p - 1;
  }
  for (unsigned d = 0; d <= top; ++d)
    for (auto& u : monomials_of_degree(j.num_vars(), d))
      if (!j.contains(u)) out.push_back(std::move(u));
  return out;
}

}  // namespace starshape
