#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "jarnik/error.hpp"

namespace jarnik {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or a plain decimal such as "0.125".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      if (s.find('/') != std::string::npos) throw Error(ErrorCode::ParseError, s);
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac_len = s.size() - dot - 1;
      Integer num(digits.empty() || digits == "-" ? std::string("0") : digits, 10);
      Integer den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    Rational r(s, 10);
    if (r.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in " + s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, "not a rational: '" + s + "'");
  }
}

/// num/den in lowest terms.
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Canonical "p/q" form; integers print as "p".
inline std::string format_rational(const Rational& r) { return r.get_str(); }

inline Integer floor_q(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

inline Integer ceil_q(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

inline Rational pow_q(const Rational& base, unsigned exp) {
  Rational out(1);
  Rational b = base;
  while (exp > 0) {
    if (exp & 1U) out *= b;
    b *= b;
    exp >>= 1U;
  }
  return out;
}

inline Integer pow_z(const Integer& base, unsigned exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Rational abs_q(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Integer gcd_z(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm_z(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Formats r with `digits` digits after the decimal point, rounding half away from zero.
inline std::string to_decimal(const Rational& r, int digits) {
  Integer scale = pow_z(Integer(10), static_cast<unsigned>(digits));
  Rational scaled = abs_q(r) * scale;
  Integer n = floor_q(scaled + Rational(1, 2));
  std::string body = n.get_str();
  if (static_cast<int>(body.size()) <= digits) body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
  std::string out = (r < 0 && n != 0 ? "-" : "");
  out += body.substr(0, body.size() - static_cast<std::size_t>(digits));
  if (digits > 0) out += "." + body.substr(body.size() - static_cast<std::size_t>(digits));
  return out;
}

}  // namespace jarnik
