#pragma once

// Truncated formal power series and dense polynomials over an exact ring.
//
// Everything here is exact: coefficients are GMP rationals or integers and no
// operation rounds. A TruncatedSeries of order N stores the coefficients of
// x^0 .. x^N; ring operations on two series of order N give a series of
// order N.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace motzkin {

template <class T>
class TruncatedSeries {
 public:
  using value_type = T;

  explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1) {}

  /// Pads with zeros up to `order`. Passing more than order+1 coefficients is
  /// an error; use truncated_from() to drop high terms on purpose.
  TruncatedSeries(std::size_t order, std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() > order + 1) {
      throw usage_error("series of order " + std::to_string(order) + " given " +
                        std::to_string(coeffs_.size()) + " coefficients");
    }
    coeffs_.resize(order + 1);
  }

  static TruncatedSeries truncated_from(std::size_t order, std::span<const T> coeffs) {
    TruncatedSeries s(order);
    std::size_t n = std::min(coeffs.size(), order + 1);
    std::copy_n(coeffs.begin(), n, s.coeffs_.begin());
    return s;
  }

  static TruncatedSeries one(std::size_t order) { return monomial(order, 0, T(1)); }

  /// c * x^exponent, or zero when the exponent is past the truncation order.
  static TruncatedSeries monomial(std::size_t order, std::size_t exponent, const T& c) {
    TruncatedSeries s(order);
    if (exponent <= order) s.coeffs_[exponent] = c;
    return s;
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const T& operator[](std::size_t n) const { return coeffs_.at(n); }
  std::span<const T> coeffs() const noexcept { return coeffs_; }

  /// Same series at a lower truncation order.
  TruncatedSeries truncated(std::size_t order) const {
    if (order > this->order()) throw usage_error("cannot raise truncation order");
    return truncated_from(order, coeffs_);
  }

  /// x * s, still truncated at the same order.
  TruncatedSeries times_x() const {
    TruncatedSeries r(order());
    for (std::size_t n = 1; n <= order(); ++n) r.coeffs_[n] = coeffs_[n - 1];
    return r;
  }

  /// s / x^k. The k lowest coefficients must vanish; the result has order N-k.
  TruncatedSeries divided_by_x_power(std::size_t k) const {
    if (k > order()) throw usage_error("shift exceeds truncation order");
    for (std::size_t n = 0; n < k; ++n) {
      if (coeffs_[n] != 0) {
        throw internal_error("coefficient of x^" + std::to_string(n) + " is nonzero, cannot divide by x^" +
                             std::to_string(k));
      }
    }
    return TruncatedSeries(order() - k, std::vector<T>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()));
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<T> coeffs_;
};

using Series = TruncatedSeries<Rational>;

namespace detail {

template <class T>
void require_same_order(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b, const char* op) {
  if (a.order() != b.order()) {
    throw usage_error(std::string(op) + ": order mismatch (" + std::to_string(a.order()) + " vs " +
                      std::to_string(b.order()) + ")");
  }
}

}  // namespace detail

template <class T>
TruncatedSeries<T> add(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  detail::require_same_order(a, b, "add");
  std::vector<T> out(a.order() + 1);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = a[n] + b[n];
  return TruncatedSeries<T>(a.order(), std::move(out));
}

template <class T>
TruncatedSeries<T> sub(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  detail::require_same_order(a, b, "sub");
  std::vector<T> out(a.order() + 1);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = a[n] - b[n];
  return TruncatedSeries<T>(a.order(), std::move(out));
}

template <class T>
TruncatedSeries<T> scale(const TruncatedSeries<T>& a, const T& c) {
  std::vector<T> out(a.order() + 1);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = a[n] * c;
  return TruncatedSeries<T>(a.order(), std::move(out));
}

/// Cauchy product truncated at the common order (schoolbook).
template <class T>
TruncatedSeries<T> mul(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  detail::require_same_order(a, b, "mul");
  const std::size_t order = a.order();
  std::vector<T> out(order + 1);
  for (std::size_t i = 0; i <= order; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= order; ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return TruncatedSeries<T>(order, std::move(out));
}

/// Multiplicative inverse; requires a nonzero constant term.
template <class T>
TruncatedSeries<T> inv(const TruncatedSeries<T>& s) {
  if (s[0] == 0) throw domain_error("inv: series has zero constant term");
  const std::size_t order = s.order();
  std::vector<T> t(order + 1);
  T c0 = T(1) / s[0];
  t[0] = c0;
  for (std::size_t n = 1; n <= order; ++n) {
    T acc = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (s[i] == 0) continue;
      acc += s[i] * t[n - i];
    }
    t[n] = -acc * c0;
  }
  return TruncatedSeries<T>(order, std::move(t));
}

/// Principal square root of a series with constant term 1, by matching the
/// coefficients of t*t = s one at a time.
template <class T>
TruncatedSeries<T> sqrt(const TruncatedSeries<T>& s) {
  if (s[0] != 1) throw domain_error("sqrt: only series with constant term 1 are supported");
  const std::size_t order = s.order();
  std::vector<T> t(order + 1);
  t[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    T acc = s[n];
    for (std::size_t i = 1; i < n; ++i) acc -= t[i] * t[n - i];
    t[n] = acc / 2;
  }
  return TruncatedSeries<T>(order, std::move(t));
}

template <class T>
TruncatedSeries<T> operator+(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) { return add(a, b); }
template <class T>
TruncatedSeries<T> operator-(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) { return sub(a, b); }
template <class T>
TruncatedSeries<T> operator*(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) { return mul(a, b); }

// ---------------------------------------------------------------------------
// Polynomials

template <class T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial monomial(std::size_t exponent, const T& c) {
    std::vector<T> v(exponent + 1);
    v[exponent] = c;
    return Polynomial(std::move(v));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  std::ptrdiff_t degree() const noexcept { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }
  /// Exponent of the lowest nonzero term; -1 for the zero polynomial.
  std::ptrdiff_t lowest_exponent() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
  }

  /// Coefficient of x^n, zero past the degree.
  T operator[](std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : T(0); }
  std::span<const T> coeffs() const noexcept { return coeffs_; }

  Polynomial times_x_power(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<T> v(k);
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(std::move(v));
  }

  /// Coefficients up to x^order as a truncated series; higher terms are dropped.
  TruncatedSeries<T> to_series(std::size_t order) const {
    return TruncatedSeries<T>::truncated_from(order, coeffs_);
  }

  template <class U>
  Polynomial<U> cast() const {
    std::vector<U> v;
    v.reserve(coeffs_.size());
    for (const T& c : coeffs_) v.emplace_back(c);
    return Polynomial<U>(std::move(v));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using RationalPolynomial = Polynomial<Rational>;
using IntegerPolynomial = Polynomial<Integer>;

template <class T>
Polynomial<T> operator+(const Polynomial<T>& a, const Polynomial<T>& b) {
  std::vector<T> v(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return Polynomial<T>(std::move(v));
}

template <class T>
Polynomial<T> operator-(const Polynomial<T>& a, const Polynomial<T>& b) {
  std::vector<T> v(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
  return Polynomial<T>(std::move(v));
}

template <class T>
Polynomial<T> scale(const Polynomial<T>& a, const T& c) {
  std::vector<T> v(a.coeffs().begin(), a.coeffs().end());
  for (T& x : v) x *= c;
  return Polynomial<T>(std::move(v));
}

namespace detail {

template <class T>
std::vector<T> schoolbook_product(std::span<const T> a, std::span<const T> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline std::size_t limb_count(const Integer& z) { return mpz_size(z.get_mpz_t()); }

// Packs |coefficients| of one sign into a single integer, one slot of
// `slot_limbs` limbs per coefficient.
inline Integer kronecker_pack(std::span<const Integer> coeffs, int sign, std::size_t slot_limbs) {
  std::vector<mp_limb_t> limbs(coeffs.size() * slot_limbs, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) != sign) continue;
    const mpz_srcptr z = coeffs[i].get_mpz_t();
    const std::size_t n = mpz_size(z);
    for (std::size_t l = 0; l < n; ++l) limbs[i * slot_limbs + l] = mpz_getlimbn(z, static_cast<mp_size_t>(l));
  }
  Integer packed;
  mpz_import(packed.get_mpz_t(), limbs.size(), -1, sizeof(mp_limb_t), 0, 0, limbs.data());
  return packed;
}

inline void kronecker_unpack_add(const Integer& packed, int sign, std::size_t slot_limbs, std::vector<Integer>& out) {
  const mpz_srcptr z = packed.get_mpz_t();
  const std::size_t n = mpz_size(z);
  std::vector<mp_limb_t> slot(slot_limbs);
  Integer piece;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t base = i * slot_limbs;
    if (base >= n) break;
    for (std::size_t l = 0; l < slot_limbs; ++l) {
      slot[l] = base + l < n ? mpz_getlimbn(z, static_cast<mp_size_t>(base + l)) : 0;
    }
    mpz_import(piece.get_mpz_t(), slot_limbs, -1, sizeof(mp_limb_t), 0, 0, slot.data());
    if (sign > 0) {
      out[i] += piece;
    } else {
      out[i] -= piece;
    }
  }
}

/// Integer polynomial product by Kronecker substitution: split each operand
/// into its positive and negative parts, evaluate each part at 2^(64*slot)
/// with the slot wide enough that no convolution sum carries, multiply the
/// packed integers with GMP and read the coefficients back out.
inline std::vector<Integer> kronecker_product(std::span<const Integer> a, std::span<const Integer> b) {
  if (a.empty() || b.empty()) return {};
  std::size_t max_a = 0;
  std::size_t max_b = 0;
  for (const Integer& z : a) max_a = std::max(max_a, bit_length(z));
  for (const Integer& z : b) max_b = std::max(max_b, bit_length(z));
  std::size_t terms = std::min(a.size(), b.size());
  std::size_t bound_bits = max_a + max_b + bit_length(Integer(static_cast<unsigned long>(terms))) + 1;
  std::size_t slot_limbs = bound_bits / GMP_NUMB_BITS + 1;

  std::vector<Integer> out(a.size() + b.size() - 1);
  const int signs[2] = {1, -1};
  for (int sa : signs) {
    Integer pa = kronecker_pack(a, sa, slot_limbs);
    if (sgn(pa) == 0) continue;
    for (int sb : signs) {
      Integer pb = kronecker_pack(b, sb, slot_limbs);
      if (sgn(pb) == 0) continue;
      Integer prod = pa * pb;
      kronecker_unpack_add(prod, sa * sb, slot_limbs, out);
    }
  }
  return out;
}

inline constexpr std::size_t kronecker_threshold = 48;

}  // namespace detail

template <class T>
Polynomial<T> operator*(const Polynomial<T>& a, const Polynomial<T>& b) {
  if constexpr (std::is_same_v<T, Integer>) {
    if (std::min(a.coeffs().size(), b.coeffs().size()) >= detail::kronecker_threshold) {
      return Polynomial<T>(detail::kronecker_product(a.coeffs(), b.coeffs()));
    }
  }
  return Polynomial<T>(detail::schoolbook_product(a.coeffs(), b.coeffs()));
}

/// Exact value p(q) by Horner's rule.
template <class T>
Rational eval_poly(const Polynomial<T>& p, const Rational& q) {
  Rational acc = 0;
  auto c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc *= q;
    acc += Rational(c[i]);
  }
  return acc;
}

/// The radicand 1 - 2x - 3x^2.
inline IntegerPolynomial delta_polynomial() { return IntegerPolynomial{Integer(1), Integer(-2), Integer(-3)}; }

}  // namespace motzkin
