#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jarnik/matrix.hpp"

namespace jarnik {

struct HermiteResult {
  IntegerMatrix h;          // column Hermite normal form, zero columns last
  IntegerMatrix transform;  // unimodular, m * transform == h
  std::size_t rank = 0;     // number of nonzero columns of h
};

namespace detail {

// col_a <- s*col_a + t*col_b ; col_b <- u*col_a + v*col_b  (applied to both matrices)
inline void combine_columns(IntegerMatrix& m, std::size_t a, std::size_t b, const Integer& s, const Integer& t,
                            const Integer& u, const Integer& v) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer x = m(i, a);
    Integer y = m(i, b);
    m(i, a) = s * x + t * y;
    m(i, b) = u * x + v * y;
  }
}

inline void axpy_column(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= f * m(i, src);
}

inline void negate_column(IntegerMatrix& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}

}  // namespace detail

/// Column Hermite normal form: lower echelon with positive pivots; entries left of a
/// pivot in its row lie in [0, pivot). Unique for the column lattice.
inline HermiteResult hnf(const IntegerMatrix& m) {
  HermiteResult out{m, IntegerMatrix::identity(m.cols()), 0};
  IntegerMatrix& h = out.h;
  IntegerMatrix& u = out.transform;
  std::size_t piv = 0;
  for (std::size_t i = 0; i < h.rows() && piv < h.cols(); ++i) {
    for (std::size_t j = piv + 1; j < h.cols(); ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, piv) == 0) {
        h.swap_columns(piv, j);
        u.swap_columns(piv, j);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(i, piv).get_mpz_t(), h(i, j).get_mpz_t());
      Integer a = h(i, piv) / g;
      Integer b = h(i, j) / g;
      // [s -b; t a] has determinant s*a + t*b = 1.
      detail::combine_columns(h, piv, j, s, t, Integer(-b), a);
      detail::combine_columns(u, piv, j, s, t, Integer(-b), a);
    }
    if (h(i, piv) == 0) continue;
    if (h(i, piv) < 0) {
      detail::negate_column(h, piv);
      detail::negate_column(u, piv);
    }
    for (std::size_t k = 0; k < piv; ++k) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, k).get_mpz_t(), h(i, piv).get_mpz_t());
      if (q == 0) continue;
      detail::axpy_column(h, k, piv, q);
      detail::axpy_column(u, k, piv, q);
    }
    ++piv;
  }
  out.rank = piv;
  return out;
}

/// HNF basis of the lattice spanned by the columns (zero columns dropped).
inline IntegerMatrix lattice_basis(const IntegerMatrix& m) {
  auto r = hnf(m);
  IntegerMatrix out(m.rows(), r.rank);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < r.rank; ++j) out(i, j) = r.h(i, j);
  return out;
}

/// HNF basis of {x in Z^cols : m x = 0}. Always saturated.
inline IntegerMatrix integer_kernel(const IntegerMatrix& m) {
  std::size_t n = m.cols();
  if (m.rows() == 0) return IntegerMatrix::identity(n);
  auto r = hnf(m);
  IntegerMatrix k(n, n - r.rank);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = r.rank; j < n; ++j) k(i, j - r.rank) = r.transform(i, j);
  return lattice_basis(k);
}

/// span_Q(columns) intersected with Z^rows, in HNF.
inline IntegerMatrix saturate(const IntegerMatrix& basis) {
  if (basis.cols() == 0) return IntegerMatrix(basis.rows(), 0);
  IntegerMatrix complement = integer_kernel(basis.transpose());
  if (complement.cols() == 0) return IntegerMatrix::identity(basis.rows());
  return integer_kernel(complement.transpose());
}

/// Scales a rational matrix row by row to integers (row spans are preserved).
inline IntegerMatrix clear_row_denominators(const RationalMatrix& m) {
  IntegerMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l(1);
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm_z(l, m(i, j).get_den());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * l;
      out(i, j) = v.get_num();
    }
  }
  return out;
}

/// Squared fundamental volume of a lattice: the Gram determinant of any basis.
struct DetSquared {
  Rational value;

  friend bool operator==(const DetSquared& a, const DetSquared& b) { return a.value == b.value; }
  friend bool operator<(const DetSquared& a, const DetSquared& b) { return a.value < b.value; }
};

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntegerMatrix m) {
  std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  if (n == 0) return Integer(1);
  Integer sign(1);
  Integer prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return Integer(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline IntegerMatrix gram(const IntegerMatrix& basis) { return basis.transpose() * basis; }

/// Gram determinant of the column basis. Throws DependentColumns when it vanishes.
inline DetSquared gram_det_squared(const IntegerMatrix& basis) {
  Integer det = determinant(gram(basis));
  if (det == 0) throw Error(ErrorCode::DependentColumns, "basis columns are linearly dependent");
  return DetSquared{Rational(det)};
}

inline std::string matrix_key(const IntegerMatrix& m) {
  std::string key = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) key += m(i, j).get_str() + ",";
  return key;
}

/// Lexicographic comparison of bases, column by column.
inline bool basis_less(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
  return false;
}

}  // namespace jarnik
