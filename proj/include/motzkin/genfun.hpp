#pragma once

// Generating functions for Motzkin trees as exact truncated series.
//
//   M(x)    all trees                      M = x + xM + xM^2
//   L(x)    leaves over all trees          L = x / sqrt(D)
//   R_k(x)  trees whose root is k-protected R_k = x R_{k-1} + x R_{k-1}^2, R_0 = M
//   P_k(x)  k-protected vertices           P_k = R_k / sqrt(D)
//   B_k(x)  trees whose root is balanced of rank k (a polynomial), B_0 = x
//   B_k*(x) balanced rank-k vertices       B_k* = B_k / sqrt(D)
//   B*(x)   balanced vertices              sum_k B_k*
//   EB(x)   rank-weighted balanced count   sum_k k B_k*
//
// with D = 1 - 2x - 3x^2.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace motzkin {

inline Series delta_series(std::size_t order) { return delta_polynomial().cast<Rational>().to_series(order); }

inline Series sqrt_delta(std::size_t order) { return sqrt(delta_series(order)); }

/// 1/sqrt(D): the central trinomial coefficients 1, 1, 3, 7, 19, ...
inline Series inv_sqrt_delta(std::size_t order) { return inv(sqrt_delta(order)); }

inline bool has_integer_coefficients(const Series& s) {
  for (const Rational& c : s.coeffs()) {
    if (c.get_den() != 1) return false;
  }
  return true;
}

/// M(x) by peeling coefficients off the functional equation: [x^n]M depends
/// only on lower coefficients.
inline Series motzkin_series(std::size_t order) {
  if (order < 1) throw usage_error("motzkin_series: order must be at least 1");
  std::vector<Rational> m(order + 1);
  for (std::size_t n = 1; n <= order; ++n) {
    Rational c = n == 1 ? 1 : 0;
    c += m[n - 1];
    for (std::size_t i = 1; i + 1 < n; ++i) c += m[i] * m[n - 1 - i];
    m[n] = c;
  }
  return Series(order, std::move(m));
}

/// M(x) = (1 - x - sqrt(D)) / (2x), with the division by x done by shifting
/// after checking the low coefficients vanish.
inline Series motzkin_closed_form(std::size_t order) {
  if (order < 1) throw usage_error("motzkin_closed_form: order must be at least 1");
  const std::size_t work = order + 1;
  Series numerator = Series(work, {Rational(1), Rational(-1)}) - sqrt_delta(work);
  if (numerator[0] != 0 || numerator[1] != 0) {
    throw internal_error("motzkin_closed_form: numerator does not vanish to second order");
  }
  return scale(numerator.divided_by_x_power(1), Rational(1, 2));
}

inline Series leaves_series(std::size_t order) {
  if (order < 1) throw usage_error("leaves_series: order must be at least 1");
  return inv_sqrt_delta(order).times_x();
}

inline Series protected_root_series(std::size_t k, std::size_t order) {
  Series r = motzkin_series(order);
  for (std::size_t level = 1; level <= k; ++level) r = (r + r * r).times_x();
  return r;
}

inline Series protected_series(std::size_t k, std::size_t order) {
  return protected_root_series(k, order) * inv_sqrt_delta(order);
}

/// Polynomial pair with 2x R_k = U + V sqrt(D).
struct SqrtPair {
  IntegerPolynomial U;
  IntegerPolynomial V;
  std::size_t level = 0;
};

/// One application of R -> xR + xR^2 in pair form:
///   U' = xU + (U^2 + V^2 D) / 2,   V' = xV + UV.
/// Throws internal_error if U^2 + V^2 D has an odd coefficient.
inline SqrtPair next_sqrt_pair(const SqrtPair& p) {
  IntegerPolynomial twice = p.U * p.U + p.V * p.V * delta_polynomial();
  std::vector<Integer> half(twice.coeffs().begin(), twice.coeffs().end());
  for (std::size_t i = 0; i < half.size(); ++i) {
    if (!mpz_divisible_2exp_p(half[i].get_mpz_t(), 1)) {
      throw internal_error("sqrt_pair: odd coefficient at x^" + std::to_string(i) + " for level " +
                           std::to_string(p.level + 1));
    }
    mpz_divexact_ui(half[i].get_mpz_t(), half[i].get_mpz_t(), 2);
  }
  SqrtPair next;
  next.U = p.U.times_x_power(1) + IntegerPolynomial(std::move(half));
  next.V = p.V.times_x_power(1) + p.U * p.V;
  next.level = p.level + 1;
  return next;
}

/// Level 0 comes from the closed form of M: U = 1 - x, V = -1.
inline SqrtPair sqrt_pair(std::size_t k) {
  SqrtPair p{IntegerPolynomial{Integer(1), Integer(-1)}, IntegerPolynomial{Integer(-1)}, 0};
  while (p.level < k) p = next_sqrt_pair(p);
  return p;
}

/// (U + V sqrt(D)) / (2x) to the given order.
inline Series reconstruct_root_series(const SqrtPair& p, std::size_t order) {
  const std::size_t work = order + 1;
  Series twice = p.U.cast<Rational>().to_series(work) + p.V.cast<Rational>().to_series(work) * sqrt_delta(work);
  return scale(twice.divided_by_x_power(1), Rational(1, 2));
}

/// B_k exactly: B_0 = x, B_k = x B_{k-1} + x B_{k-1}^2. Degree is at most
/// 2^(k+1) - 1, so keep k modest.
inline IntegerPolynomial balanced_poly(std::size_t k) {
  IntegerPolynomial b = IntegerPolynomial::monomial(1, Integer(1));
  for (std::size_t level = 1; level <= k; ++level) b = (b + b * b).times_x_power(1);
  return b;
}

/// B_k for k = 0, 1, ... truncated at `order`. Only levels with k + 1 <= order
/// have a nonzero truncation, since the lowest term of B_k is x^(k+1).
inline std::vector<Series> balanced_root_levels(std::size_t order) {
  std::vector<Series> levels;
  Series b = Series::monomial(order, 1, Rational(1));
  for (std::size_t k = 0; k + 1 <= order; ++k) {
    levels.push_back(b);
    b = (b + b * b).times_x();
  }
  return levels;
}

/// B_k truncated at `order`, without forming the full degree-2^(k+1) polynomial.
inline Series balanced_root_level(std::size_t k, std::size_t order) {
  if (k + 1 > order) return Series(order);
  Series b = Series::monomial(order, 1, Rational(1));
  for (std::size_t level = 1; level <= k; ++level) b = (b + b * b).times_x();
  return b;
}

inline Series balanced_series(std::size_t k, std::size_t order) {
  return balanced_root_level(k, order) * inv_sqrt_delta(order);
}

/// sum_k B_k(x): trees whose root is balanced.
inline Series balanced_root_series(std::size_t order) {
  Series total(order);
  for (const Series& b : balanced_root_levels(order)) total = total + b;
  return total;
}

inline Series balanced_total_series(std::size_t order) {
  if (order < 1) throw usage_error("balanced_total_series: order must be at least 1");
  return balanced_root_series(order) * inv_sqrt_delta(order);
}

/// b(n) = [x^n] sum_k B_k(x).
inline Integer balanced_root_count(std::size_t n) {
  if (n < 1) throw usage_error("balanced_root_count: n must be at least 1");
  return balanced_root_series(n)[n].get_num();
}

inline Series eb_series(std::size_t order) {
  if (order < 1) throw usage_error("eb_series: order must be at least 1");
  Series weighted(order);
  auto levels = balanced_root_levels(order);
  for (std::size_t k = 1; k < levels.size(); ++k) {
    weighted = weighted + scale(levels[k], Rational(static_cast<unsigned long>(k)));
  }
  return weighted * inv_sqrt_delta(order);
}

}  // namespace motzkin
