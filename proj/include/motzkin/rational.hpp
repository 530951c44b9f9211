#pragma once

// Exact scalars and their decimal / dyadic renderings.

#include <cstddef>
#include <string>

#include <gmpxx.h>

#include "errors.hpp"

namespace motzkin {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Rounding { down, up, half_even };

inline bool is_canonical(const Rational& q) {
  if (sgn(q.get_den()) <= 0) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return g == 1;
}

inline Rational make_rational(long num, long den) {
  if (den == 0) throw domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer pow_integer(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Rational pow_rational(const Rational& base, unsigned long exp) {
  Rational r(pow_integer(base.get_num(), exp), pow_integer(base.get_den(), exp));
  return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Integer nearest to q; ties go to the even neighbour.
inline Integer round_half_even(const Rational& q) {
  Integer fl = floor_div(q.get_num(), q.get_den());
  Rational frac = q - Rational(fl);
  int c = cmp(frac, Rational(1, 2));
  if (c < 0) return fl;
  if (c > 0) return fl + 1;
  return mpz_even_p(fl.get_mpz_t()) ? fl : Integer(fl + 1);
}

inline Integer round_to_integer(const Rational& q, Rounding mode) {
  switch (mode) {
    case Rounding::down: return floor_div(q.get_num(), q.get_den());
    case Rounding::up: return ceil_div(q.get_num(), q.get_den());
    case Rounding::half_even: return round_half_even(q);
  }
  throw internal_error("unhandled rounding mode");
}

/// Fixed-point decimal with `places` digits after the point. Directed modes
/// round toward -inf (down) or +inf (up), so an interval rendered with
/// (down, up) always contains the exact one.
inline std::string to_decimal(const Rational& q, std::size_t places, Rounding mode) {
  Integer scale = pow_integer(Integer(10), places);
  Integer scaled = round_to_integer(q * Rational(scale), mode);
  bool negative = sgn(scaled) < 0;
  Integer mag = abs(scaled);
  std::string digits = mag.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = negative ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    out += '.';
    out += digits.substr(digits.size() - places);
  }
  return out;
}

inline std::string to_exact_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::size_t bit_length(const Integer& z) {
  return sgn(z) == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

/// Nearest multiple of 2^-bits in the given direction.
inline Rational round_dyadic(const Rational& q, std::size_t bits, Rounding mode) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
  Rational r(round_to_integer(q * Rational(scale), mode), scale);
  r.canonicalize();
  return r;
}

/// Keeps q exact while its denominator fits in `bits` bits; otherwise rounds
/// it outward onto the 2^-bits grid. Used to keep rigorous enclosures compact.
inline Rational tighten(const Rational& q, std::size_t bits, Rounding mode) {
  if (bit_length(q.get_den()) <= bits) return q;
  return round_dyadic(q, bits, mode);
}

}  // namespace motzkin
