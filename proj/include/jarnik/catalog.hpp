#pragma once

// Ordered catalog of completely rational a-dimensional affine subspaces of R^d.
//
// Each subspace V corresponds to a saturated rank-(a+1) sublattice of Z^(d+1) not
// contained in {x0 = 0}; entries are sorted by squared covolume, ties broken by
// the lexicographic order of the HNF basis.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "jarnik/subspace.hpp"

namespace jarnik {

struct RationalAffineSubspace {
  IntegerSublattice lattice;  // rank a+1, column HNF
  DetSquared det_sq;
  IntegerMatrix normals;      // (d+1) x (d-a) integer basis of the orthogonal lattice

  std::size_t ambient_dim() const { return lattice.ambient() - 1; }
  std::size_t dim() const { return lattice.rank() - 1; }

  /// The slice at x0 = 1 as a rational affine subspace of R^d.
  AffineSubspaceSpec affine_part() const {
    const IntegerMatrix& b = lattice.basis;
    std::size_t d = ambient_dim();
    AlgVector base(d);
    for (std::size_t i = 0; i < d; ++i) base[i] = AlgebraicNumber(ratio(b(i + 1, 0), b(0, 0)));
    std::vector<AlgVector> dirs;
    for (std::size_t j = 1; j < b.cols(); ++j) {
      AlgVector v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = AlgebraicNumber(Rational(b(i + 1, j)));
      dirs.push_back(std::move(v));
    }
    return AffineSubspaceSpec::from_columns(std::move(base), dirs);
  }
};

/// Builds a catalog entry from any integer basis of the lattice (saturates it).
inline RationalAffineSubspace make_rational_subspace(const IntegerMatrix& generators) {
  IntegerMatrix sat = saturate(generators);
  RationalAffineSubspace v;
  v.lattice.basis = sat;
  v.det_sq = gram_det_squared(sat);
  v.normals = integer_kernel(sat.transpose());
  return v;
}

enum class CatalogMethod { Auto, Primal, Dual };

struct CatalogOptions {
  CatalogMethod method = CatalogMethod::Auto;
  std::size_t max_vectors = 4'000'000;  // resource guard on generated integer vectors
};

class SubspaceCatalog {
 public:
  SubspaceCatalog() = default;
  SubspaceCatalog(std::size_t d, std::size_t a, Rational bound, std::vector<RationalAffineSubspace> entries)
      : d_(d), a_(a), bound_(std::move(bound)), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const auto& x, const auto& y) {
      if (x.det_sq.value != y.det_sq.value) return x.det_sq.value < y.det_sq.value;
      return basis_less(x.lattice.basis, y.lattice.basis);
    });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i == 0 || entries_[i].det_sq.value != entries_[i - 1].det_sq.value) nu_.push_back(i + 1);
    }
  }

  std::size_t ambient_dim() const { return d_; }
  std::size_t dim() const { return a_; }
  const Rational& det_sq_bound() const { return bound_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<RationalAffineSubspace>& entries() const { return entries_; }

  /// 1-based access, matching V_1, V_2, ...
  const RationalAffineSubspace& at(std::size_t index) const { return entries_.at(index - 1); }
  const Rational& det_sq(std::size_t index) const { return at(index).det_sq.value; }

  /// nu_1 < nu_2 < ... : first index of each distinct determinant value (1-based).
  const std::vector<std::size_t>& nu_indices() const { return nu_; }
  std::size_t distinct_values() const { return nu_.size(); }

  /// d_{nu_k} for k >= 1.
  const Rational& det_sq_of_group(std::size_t k) const { return det_sq(nu_.at(k - 1)); }

  /// Largest k with nu_k <= n (0 when n < 1).
  std::size_t group_count_upto(std::size_t n) const {
    return static_cast<std::size_t>(std::upper_bound(nu_.begin(), nu_.end(), n) - nu_.begin());
  }

  /// JSON lines: {"basis_hnf": columns, "det_sq": "p/q", "index": nu}.
  std::string to_json_lines() const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& b = entries_[i].lattice.basis;
      nlohmann::json cols = nlohmann::json::array();
      for (std::size_t j = 0; j < b.cols(); ++j) {
        nlohmann::json col = nlohmann::json::array();
        for (std::size_t r = 0; r < b.rows(); ++r) {
          if (b(r, j).fits_slong_p()) {
            col.push_back(b(r, j).get_si());
          } else {
            col.push_back(b(r, j).get_str());
          }
        }
        cols.push_back(col);
      }
      nlohmann::json line = {{"basis_hnf", cols}, {"det_sq", format_rational(entries_[i].det_sq.value)},
                             {"index", i + 1}};
      out += line.dump() + "\n";
    }
    return out;
  }

 private:
  std::size_t d_ = 0;
  std::size_t a_ = 0;
  Rational bound_;
  std::vector<RationalAffineSubspace> entries_;
  std::vector<std::size_t> nu_;
};

namespace detail {

using IVec = std::vector<std::int64_t>;

inline std::int64_t norm_sq(const IVec& v) {
  std::int64_t s = 0;
  for (auto x : v) s += x * x;
  return s;
}

inline bool canonical_sign(const IVec& v) {
  for (auto x : v) {
    if (x != 0) return x > 0;
  }
  return false;
}

/// All nonzero integer vectors of Z^n with first nonzero entry positive and |v|^2 <= limit.
inline std::vector<IVec> short_vectors(std::size_t n, std::int64_t limit, std::size_t budget) {
  std::vector<IVec> out;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  while (r * r > limit) --r;
  IVec v(n, -r);
  while (true) {
    if (canonical_sign(v) && norm_sq(v) <= limit) {
      out.push_back(v);
      if (out.size() > budget) throw Error(ErrorCode::BoundTooLargeForBudget, "too many short vectors");
    }
    std::size_t i = 0;
    while (i < n && v[i] == r) v[i++] = -r;
    if (i == n) break;
    ++v[i];
  }
  std::stable_sort(out.begin(), out.end(), [](const IVec& a, const IVec& b) { return norm_sq(a) < norm_sq(b); });
  return out;
}

inline IntegerMatrix to_matrix(const std::vector<IVec>& cols) {
  IntegerMatrix m(cols.front().size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = Integer(static_cast<long>(cols[j][i]));
  return m;
}

inline bool touches_x0(const IntegerMatrix& basis) {
  for (std::size_t j = 0; j < basis.cols(); ++j)
    if (basis(0, j) != 0) return true;
  return false;
}

}  // namespace detail

/// (4/3)^(n(n-1)/2): Hermite's bound for gamma_n^n, so that for a rank-n lattice
/// prod_i lambda_i^2 <= (4/3)^(n(n-1)/2) * det^2 (Minkowski's second theorem).
inline Rational minkowski_product_constant(std::size_t n) {
  return pow_q(Rational(4, 3), static_cast<unsigned>(n * (n - 1) / 2));
}

/// Primal route: saturations of independent tuples of short vectors whose squared
/// norms multiply to at most the Minkowski product bound.
inline std::vector<RationalAffineSubspace> enumerate_primal(std::size_t d, std::size_t a, const Rational& bound,
                                                            const CatalogOptions& opts) {
  std::size_t n = a + 1;
  Rational limit_q = minkowski_product_constant(n) * bound;
  Integer limit_z = floor_q(limit_q);
  if (!limit_z.fits_slong_p()) throw Error(ErrorCode::BoundTooLargeForBudget, "bound too large");
  std::int64_t limit = limit_z.get_si();
  auto vecs = detail::short_vectors(d + 1, limit, opts.max_vectors);
  std::unordered_set<std::string> seen;
  std::vector<RationalAffineSubspace> out;
  std::vector<std::size_t> pick;
  std::vector<detail::IVec> chosen;

  auto recurse = [&](auto&& self, std::size_t start, Integer product) -> void {
    if (chosen.size() == n) {
      IntegerMatrix gens = detail::to_matrix(chosen);
      if (determinant(gram(gens)) == 0) return;
      IntegerMatrix sat = saturate(gens);
      if (!detail::touches_x0(sat)) return;
      std::string key = matrix_key(sat);
      if (seen.count(key)) return;
      seen.insert(key);
      RationalAffineSubspace v;
      v.lattice.basis = sat;
      v.det_sq = gram_det_squared(sat);
      if (v.det_sq.value > bound) return;
      v.normals = integer_kernel(sat.transpose());
      out.push_back(std::move(v));
      return;
    }
    for (std::size_t i = start; i < vecs.size(); ++i) {
      Integer next = product * Integer(static_cast<long>(detail::norm_sq(vecs[i])));
      // Remaining vectors are at least as long as vecs[i].
      Integer tail = next;
      for (std::size_t r = chosen.size() + 1; r < n; ++r) tail *= Integer(static_cast<long>(detail::norm_sq(vecs[i])));
      if (Rational(tail) > limit_q) break;
      chosen.push_back(vecs[i]);
      if (chosen.size() < 2 || determinant(gram(detail::to_matrix(chosen))) != 0) self(self, i + 1, next);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0, Integer(1));
  return out;
}

/// Dual route for hyperplanes (a = d - 1): a saturated corank-1 lattice is the
/// orthogonal of a primitive normal n, with det^2 = |n|^2.
inline std::vector<RationalAffineSubspace> enumerate_dual(std::size_t d, const Rational& bound,
                                                          const CatalogOptions& opts) {
  Integer limit_z = floor_q(bound);
  if (!limit_z.fits_slong_p()) throw Error(ErrorCode::BoundTooLargeForBudget, "bound too large");
  auto normals = detail::short_vectors(d + 1, limit_z.get_si(), opts.max_vectors);
  std::vector<RationalAffineSubspace> out;
  for (const auto& nv : normals) {
    std::int64_t g = 0;
    for (auto x : nv) g = std::gcd(g, x);
    if (g != 1) continue;
    bool only_x0 = nv[0] != 0;
    for (std::size_t i = 1; i < nv.size() && only_x0; ++i) only_x0 = nv[i] == 0;
    if (only_x0) continue;
    IntegerMatrix row = detail::to_matrix({nv}).transpose();
    RationalAffineSubspace v;
    v.lattice.basis = integer_kernel(row);
    v.det_sq = DetSquared{Rational(static_cast<long>(detail::norm_sq(nv)))};
    v.normals = detail::to_matrix({nv});
    out.push_back(std::move(v));
  }
  return out;
}

inline SubspaceCatalog enumerate_catalog(std::size_t d, std::size_t a, const Rational& det_sq_bound,
                                         const CatalogOptions& opts = {}) {
  if (a < 1 || a > d) throw Error(ErrorCode::InvalidArgument, "need 1 <= a <= d");
  if (det_sq_bound < 1) throw Error(ErrorCode::InvalidArgument, "det_sq_bound must be >= 1");
  CatalogMethod method = opts.method;
  if (method == CatalogMethod::Auto) method = (a + 1 == d) ? CatalogMethod::Dual : CatalogMethod::Primal;
  if (method == CatalogMethod::Dual && a + 1 != d) throw Error(ErrorCode::InvalidArgument, "dual route needs a = d-1");
  if (a == d) {
    // Only Z^(d+1) itself.
    return SubspaceCatalog(d, a, det_sq_bound, {make_rational_subspace(IntegerMatrix::identity(d + 1))});
  }
  auto entries = method == CatalogMethod::Dual ? enumerate_dual(d, det_sq_bound, opts)
                                               : enumerate_primal(d, a, det_sq_bound, opts);
  return SubspaceCatalog(d, a, det_sq_bound, std::move(entries));
}

/// Exact test: does the box ||x - center|| <= radius meet the affine slice of V?
inline bool box_meets(const RationalAffineSubspace& V, const AlgVector& center, const AlgebraicNumber& radius) {
  std::size_t d = center.size();
  if (V.normals.cols() == 1) {
    // Hyperplane n0 + sum n_i x_i = 0 meets the box iff |n0 + n.c| <= radius * sum|n_i|.
    const IntegerMatrix& n = V.normals;
    double approx = n(0, 0).get_d();
    double scale = std::abs(approx) + 1.0;
    Integer l1(0);
    for (std::size_t i = 0; i < d; ++i) {
      double ci = center[i].to_double();
      approx += n(i + 1, 0).get_d() * ci;
      scale += std::abs(n(i + 1, 0).get_d() * ci);
      l1 += abs(n(i + 1, 0));
    }
    double reach = radius.to_double() * l1.get_d();
    double tol = 1e-9 * (scale + reach + 1.0);
    double margin = std::abs(approx) - reach;
    if (margin > tol) return false;
    if (margin < -tol) return true;
    AlgebraicNumber value(n(0, 0));
    for (std::size_t i = 0; i < d; ++i) value += AlgebraicNumber(n(i + 1, 0)) * center[i];
    return abs(value) <= radius * AlgebraicNumber(l1);
  }
  AffineSubspaceSpec slice = V.affine_part();
  return sets_intersect(SupnormSet::box(center, radius), slice.as_set());
}

struct BlockedIndex {
  std::optional<std::size_t> m;  // first catalog index whose slice meets the box (1-based)
  std::size_t k = 0;             // largest k with nu_k <= m - 1
  bool horizon_limited = false;  // no entry within the catalog meets the box
};

inline BlockedIndex first_blocked_index(const AlgVector& center, const AlgebraicNumber& radius,
                                        const SubspaceCatalog& catalog) {
  if (catalog.empty()) throw Error(ErrorCode::CatalogExhausted, "empty catalog");
  for (std::size_t j = 1; j <= catalog.size(); ++j) {
    if (box_meets(catalog.at(j), center, radius)) return {j, catalog.group_count_upto(j - 1), false};
  }
  return {std::nullopt, catalog.distinct_values(), true};
}

}  // namespace jarnik
