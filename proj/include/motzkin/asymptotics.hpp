#pragma once

// Limiting vertex proportions and rigorous bounds on their infinite sums.
//
// Every generating function of interest has the shape N(x) / sqrt(D) with N
// analytic past the singularity x = 1/3, and total vertex counts have
// limiting constant 1 against the central trinomial coefficients. So the
// limiting proportion of such a vertex class is N(1/3), and both p_k (the
// k-protected proportion) and b_k (balanced of rank k) obey
//
//   x_{k+1} = (x_k + x_k^2) / 3,   p_0 = 1,   b_0 = 1/3.
//
// Bounds: since x_{k+1} / x_k = (1 + x_k) / 3 is decreasing,
//   b_m (1/3)^j <= b_{m+j} <= b_m (1/3 + b_m)^j,
// and the geometric tails past the cutoff m sum in closed form.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "genfun.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace motzkin {

inline Rational probability_step(const Rational& x) { return (x + x * x) / 3; }

struct ProbabilitySequence {
  std::vector<Rational> values;

  const Rational& operator[](std::size_t k) const { return values.at(k); }
  std::size_t size() const noexcept { return values.size(); }
};

namespace detail {

inline ProbabilitySequence iterate_probabilities(Rational start, std::size_t max_level) {
  ProbabilitySequence seq;
  seq.values.reserve(max_level + 1);
  seq.values.push_back(std::move(start));
  for (std::size_t k = 1; k <= max_level; ++k) seq.values.push_back(probability_step(seq.values.back()));
  return seq;
}

}  // namespace detail

/// Exact p_0 .. p_K. Denominators are 3^(2^K - 1), so K past ~20 gets costly.
inline ProbabilitySequence protected_probability_sequence(std::size_t max_level) {
  return detail::iterate_probabilities(Rational(1), max_level);
}

/// Exact b_0 .. b_K, with b_0 = 1/3 the limiting leaf proportion.
inline ProbabilitySequence balanced_probability_sequence(std::size_t max_level) {
  return detail::iterate_probabilities(Rational(1, 3), max_level);
}

inline const Rational& dominant_singularity() {
  static const Rational third(1, 3);
  return third;
}

/// Limiting constant of [x^n] numerator(x)/sqrt(D) relative to the central
/// trinomial coefficients: numerator(1/3). A polynomial numerator has
/// infinite radius of convergence, so the transfer always applies.
template <class T>
Rational bender_constant(const Polynomial<T>& numerator) {
  return eval_poly(numerator, dominant_singularity());
}

/// p_k read off the pair form 2x R_k = U_k + V_k sqrt(D): the V_k sqrt(D)
/// part is killed by the singularity and U_k/(2x) at x = 1/3 leaves
/// (3/2) U_k(1/3).
inline Rational protected_constant_via_pair(std::size_t k) {
  return Rational(3, 2) * eval_poly(sqrt_pair(k).U, dominant_singularity());
}

// ---------------------------------------------------------------------------
// Interval bounds

/// [lower, upper] with exact rational endpoints. When the exact endpoints
/// would need more than `precision_bits` bits of denominator, they are
/// rounded outward onto the 2^-precision_bits grid, so the interval still
/// contains the exact one.
struct BoundInterval {
  Rational lower;
  Rational upper;
  std::size_t cutoff = 0;
  std::size_t precision_bits = 0;
  bool exact = true;  // no outward rounding happened

  Rational width() const { return upper - lower; }
  bool contains(const Rational& q) const { return lower <= q && q <= upper; }
  bool contains(const BoundInterval& inner) const { return lower <= inner.lower && inner.upper <= upper; }
};

/// Enough bits that rounding stays far below b_m^2 ~ 9^-m, the scale at which
/// intervals for neighbouring cutoffs differ.
inline std::size_t default_precision_bits(std::size_t cutoff) { return 128 + 4 * cutoff; }

/// r / (1 - r): sum of r^j over j >= 1.
inline Rational geometric_tail(const Rational& r) {
  if (r >= 1) throw internal_error("geometric tail ratio must be below 1");
  return r / (1 - r);
}

/// sum_{j >= m} j r^(j - m) = (m - (m - 1) r) / (1 - r)^2.
inline Rational rank_weighted_tail(std::size_t m, const Rational& r) {
  if (r >= 1) throw internal_error("geometric tail ratio must be below 1");
  Rational mm(static_cast<unsigned long>(m));
  Rational one_minus = 1 - r;
  return (mm - (mm - 1) * r) / (one_minus * one_minus);
}

namespace detail {

class Enclosure {
 public:
  explicit Enclosure(std::size_t bits) : bits_(bits) {}

  Rational down(const Rational& q) { return track(q, tighten(q, bits_, Rounding::down)); }
  Rational up(const Rational& q) { return track(q, tighten(q, bits_, Rounding::up)); }
  bool exact() const noexcept { return exact_; }
  std::size_t bits() const noexcept { return bits_; }

 private:
  Rational track(const Rational& q, Rational r) {
    if (r != q) exact_ = false;
    return r;
  }

  std::size_t bits_;
  bool exact_ = true;
};

/// Lower and upper enclosures of b_0 .. b_m. The step map is increasing on
/// x >= 0, so rounding each side outward after every step keeps
/// lo_k <= b_k <= hi_k.
struct BalancedEnclosures {
  std::vector<Rational> lo;
  std::vector<Rational> hi;
};

inline BalancedEnclosures balanced_enclosures(std::size_t m, Enclosure& enc) {
  BalancedEnclosures e;
  e.lo.push_back(Rational(1, 3));
  e.hi.push_back(Rational(1, 3));
  for (std::size_t k = 1; k <= m; ++k) {
    e.lo.push_back(enc.down(probability_step(e.lo.back())));
    e.hi.push_back(enc.up(probability_step(e.hi.back())));
  }
  return e;
}

struct RawBounds {
  Rational lower;
  Rational upper;
};

// Partial sum over k = 0..m plus the geometric tails over k >= m+1.
inline RawBounds balanced_probability_raw(const BalancedEnclosures& e, std::size_t m, Enclosure& enc) {
  Rational lo_sum = 0;
  Rational hi_sum = 0;
  for (std::size_t k = 0; k <= m; ++k) {
    lo_sum += e.lo[k];
    hi_sum += e.hi[k];
  }
  const Rational& third = dominant_singularity();
  Rational lower = enc.down(lo_sum + e.lo[m] * geometric_tail(third));
  Rational upper = enc.up(hi_sum + e.hi[m] * geometric_tail(third + e.hi[m]));
  return {lower, upper};
}

}  // namespace detail

/// Enclosure of P(balanced) = sum_k b_k from the first m+1 terms and the
/// geometric tail bounds beyond them.
inline BoundInterval balanced_probability_bounds(std::size_t m, std::size_t precision_bits) {
  detail::Enclosure enc(precision_bits);
  auto e = detail::balanced_enclosures(m, enc);
  auto raw = detail::balanced_probability_raw(e, m, enc);
  return BoundInterval{raw.lower, raw.upper, m, precision_bits, enc.exact()};
}

inline BoundInterval balanced_probability_bounds(std::size_t m) {
  return balanced_probability_bounds(m, default_precision_bits(m));
}

/// Enclosure of E[rank | balanced] = (sum_k k b_k) / P(balanced). The
/// numerator takes k = 0..m-1 exactly and bounds the tail from k = m with
/// ratio 1/3 (below) and 1/3 + b_m (above); each numerator bound is divided
/// by the opposite end of the P(balanced) interval.
inline BoundInterval expected_rank_bounds(std::size_t m, std::size_t precision_bits) {
  if (m < 1) throw usage_error("expected_rank_bounds: cutoff must be at least 1");
  detail::Enclosure enc(precision_bits);
  auto e = detail::balanced_enclosures(m, enc);
  auto prob = detail::balanced_probability_raw(e, m, enc);

  Rational lo_num = 0;
  Rational hi_num = 0;
  for (std::size_t k = 1; k < m; ++k) {
    Rational kk(static_cast<unsigned long>(k));
    lo_num += kk * e.lo[k];
    hi_num += kk * e.hi[k];
  }
  const Rational& third = dominant_singularity();
  lo_num = enc.down(lo_num + e.lo[m] * rank_weighted_tail(m, third));
  hi_num = enc.up(hi_num + e.hi[m] * rank_weighted_tail(m, third + e.hi[m]));

  Rational lower = enc.down(lo_num / prob.upper);
  Rational upper = enc.up(hi_num / prob.lower);
  return BoundInterval{lower, upper, m, precision_bits, enc.exact()};
}

inline BoundInterval expected_rank_bounds(std::size_t m) {
  return expected_rank_bounds(m, default_precision_bits(m));
}

// ---------------------------------------------------------------------------
// Finite-n proportions

/// Motzkin numbers M_0 .. M_N from (n+2) M_n = (2n+1) M_{n-1} + 3(n-1) M_{n-2}.
/// The number of trees with n vertices is M_{n-1}.
inline std::vector<Integer> motzkin_numbers(std::size_t max_index) {
  std::vector<Integer> m{Integer(1), Integer(1)};
  for (std::size_t n = 2; n <= max_index; ++n) {
    Integer next = Integer(static_cast<unsigned long>(2 * n + 1)) * m[n - 1] +
                   Integer(static_cast<unsigned long>(3 * (n - 1))) * m[n - 2];
    mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), n + 2);
    m.push_back(std::move(next));
  }
  m.resize(max_index + 1);
  return m;
}

/// Central trinomial coefficients T_0 .. T_N from n T_n = (2n-1) T_{n-1} + 3(n-1) T_{n-2}.
/// The number of leaves over all n-vertex trees is T_{n-1}.
inline std::vector<Integer> central_trinomial_numbers(std::size_t max_index) {
  std::vector<Integer> t{Integer(1), Integer(1)};
  for (std::size_t n = 2; n <= max_index; ++n) {
    Integer next = Integer(static_cast<unsigned long>(2 * n - 1)) * t[n - 1] +
                   Integer(static_cast<unsigned long>(3 * (n - 1))) * t[n - 2];
    mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), n);
    t.push_back(std::move(next));
  }
  t.resize(max_index + 1);
  return t;
}

/// Exact l(n) / (n t_n), the fraction of leaves among all vertices of all
/// n-vertex trees. Linear in n, so usable far past series truncation orders.
inline Rational exact_leaf_fraction(std::size_t n) {
  if (n < 1) throw usage_error("exact_leaf_fraction: n must be at least 1");
  Integer leaves = central_trinomial_numbers(n - 1)[n - 1];
  Integer trees = motzkin_numbers(n - 1)[n - 1];
  return make_rational(leaves, trees * Integer(static_cast<unsigned long>(n)));
}

/// [x^n] P_k / (n t_n): the fraction of k-protected vertices at size n.
inline Rational protected_fraction(std::size_t k, std::size_t n) {
  Series p = protected_series(k, n);
  Series m = motzkin_series(n);
  return p[n] / (m[n] * static_cast<unsigned long>(n));
}

/// eb(n) / (number of balanced vertices): mean rank of a balanced vertex
/// over all n-vertex trees.
inline Rational expected_rank_estimate(std::size_t n) {
  return eb_series(n)[n] / balanced_total_series(n)[n];
}

// ---------------------------------------------------------------------------
// Closed-form count asymptotics (floating point). The log forms stay finite
// where 3^n overflows a double.

inline double log_leaf_count_asymptotic(double n) {
  using std::numbers::pi;
  return 0.5 * std::log(3.0 / pi) + n * std::log(3.0) - std::log(2.0) - 0.5 * std::log(n);
}

inline double log_vertex_count_asymptotic(double n) {
  using std::numbers::pi;
  return std::log(n) + (n + 1) * std::log(3.0) + 0.5 * std::log(3.0) + std::log1p(1.0 / (16.0 * n)) -
         std::log(2 * n + 3) - 0.5 * std::log((n + 2) * pi);
}

/// sqrt(3/pi) 3^n / (2 sqrt(n)); overflows to +inf for n past ~640.
inline double leaf_count_asymptotic(double n) { return std::exp(log_leaf_count_asymptotic(n)); }

/// n 3^(n+1) sqrt(3) (1 + 1/(16n)) / ((2n+3) sqrt((n+2) pi)); overflows like the leaf formula.
inline double vertex_count_asymptotic(double n) { return std::exp(log_vertex_count_asymptotic(n)); }

inline double asymptotic_leaf_ratio(double n) {
  return std::exp(log_leaf_count_asymptotic(n) - log_vertex_count_asymptotic(n));
}

// ---------------------------------------------------------------------------

struct BoundCheckReport {
  std::size_t checked = 0;
  std::optional<std::size_t> first_violation;
};

/// Checks b(n) n^2 <= (29/10)^n for 1 <= n <= N, exactly.
inline BoundCheckReport balanced_root_bound_check(std::size_t max_n) {
  if (max_n < 1) throw usage_error("balanced_root_bound_check: N must be at least 1");
  Series roots = balanced_root_series(max_n);
  BoundCheckReport report;
  for (std::size_t n = 1; n <= max_n; ++n) {
    Integer nn(static_cast<unsigned long>(n));
    Integer lhs = roots[n].get_num() * nn * nn * pow_integer(Integer(10), n);
    Integer rhs = pow_integer(Integer(29), n);
    ++report.checked;
    if (lhs > rhs) {
      report.first_violation = n;
      break;
    }
  }
  return report;
}

}  // namespace motzkin
