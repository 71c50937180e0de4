#pragma once

#include <gtest/gtest.h>

#include <random>

#include "jarnik/jarnik.hpp"

namespace jarnik {
inline void PrintTo(const AlgebraicNumber& x, std::ostream* os) { *os << x.to_decimal(20); }
}  // namespace jarnik

namespace jt {

using namespace jarnik;

inline FieldPtr cube_root_two() { return field_make({-2, 0, 0, 1}, Rational(1), Rational(2)); }
inline FieldPtr sqrt_two() { return field_make({-2, 0, 1}, Rational(1), Rational(2)); }
// theta = sqrt2 + sqrt3
inline FieldPtr sqrt_two_three() { return field_make({1, 0, -10, 0, 1}, Rational(3), Rational(4)); }

inline Alg th(const FieldPtr& f) { return Alg::theta(f); }
inline Rational rq(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}
inline Alg q(long n, long d = 1) { return Alg(rq(n, d)); }

inline AlgVector vec(std::initializer_list<Alg> xs) { return AlgVector(xs); }

inline IntegerMatrix imat(const std::vector<std::vector<long>>& cols, std::size_t rows) {
  IntegerMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

// Line x2 = theta x1 + theta^2 for theta = 2^(1/3).
inline AffineSubspaceSpec cubic_line(const FieldPtr& f) {
  Alg t = th(f);
  return AffineSubspaceSpec::from_columns({q(0), t * t}, {{q(1), t}});
}

inline AffineSubspaceSpec rational_line(long slope_num, long slope_den, long offset) {
  return AffineSubspaceSpec::from_columns({q(0), q(offset)}, {{q(1), q(slope_num, slope_den)}});
}

inline Rational random_rational(std::mt19937_64& rng, long num_range, long den_max) {
  std::uniform_int_distribution<long> num(-num_range, num_range), den(1, den_max);
  return rq(num(rng), den(rng));
}

inline Alg random_alg(std::mt19937_64& rng, const FieldPtr& f, long range = 9, long den = 7) {
  QPoly c;
  for (int i = 0; i < f->degree(); ++i) {
    c.push_back(random_rational(rng, range, den));
  }
  return Alg(f, c);
}

}  // namespace jt

#define EXPECT_CODE(stmt, expected)                                     \
  do {                                                                  \
    try {                                                               \
      stmt;                                                             \
      ADD_FAILURE() << "no error thrown, expected " #expected;         \
    } catch (const ::jarnik::Error& e) {                                \
      EXPECT_EQ(e.code(), ::jarnik::ErrorCode::expected) << e.what();   \
    }                                                                   \
  } while (0)
