#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "fanokit/errors.hpp"

namespace fanokit {

using Integer = mpz_class;
using Rational = mpq_class;

/// Lattice points, exponent vectors and ray generators. Desk-scale inputs
/// never come close to the 64-bit range.
using IntVector = std::vector<std::int64_t>;
using QVector = std::vector<Rational>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

inline Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline Integer ceil_of(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::SizeCap, "integer exceeds 64-bit range: " + z.get_str());
  return z.get_si();
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational out = 1;
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

inline Integer factorial(unsigned n) {
  Integer out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

/// Canonical wire form "a/b" with b > 0 and gcd(a, b) = 1; integers keep the "/1".
inline std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Accepts "a/b" or a bare integer "a".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Integer num(s, 10);
      return Rational(num);
    }
    Integer num(s.substr(0, slash), 10);
    Integer den(s.substr(slash + 1), 10);
    if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::InvalidInput, "not a rational: '" + s + "'");
  }
}

/// Human-oriented decimal with `digits` places after the point, truncated
/// toward zero; computed with integer arithmetic only.
inline std::string to_decimal(const Rational& q, unsigned digits = 10) {
  Integer num = q.get_num();
  const Integer& den = q.get_den();
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  Integer whole = num / den;
  Integer rest = num % den;
  std::string out = sign + whole.get_str();
  if (digits == 0) return out;
  out += ".";
  for (unsigned i = 0; i < digits; ++i) {
    rest *= 10;
    Integer digit = rest / den;
    rest %= den;
    out += digit.get_str();
  }
  return out;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline QVector to_rational(const IntVector& v) {
  QVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(Integer(static_cast<long>(x)));
  return out;
}

inline Rational dot(const IntVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(Integer(static_cast<long>(a[i]))) * b[i];
  return s;
}

inline Rational dot(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::int64_t dot(const IntVector& a, const IntVector& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace fanokit
