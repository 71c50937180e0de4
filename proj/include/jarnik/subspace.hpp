#pragma once

#include <optional>
#include <vector>

#include "jarnik/distance.hpp"
#include "jarnik/hnf.hpp"

namespace jarnik {

/// An affine subspace A of R^d: base_point + directions * s, directions a d x a matrix
/// of full column rank with entries in a single field.
class AffineSubspaceSpec {
 public:
  AffineSubspaceSpec() = default;

  AffineSubspaceSpec(AlgVector base_point, AlgMatrix directions)
      : base_(std::move(base_point)), dirs_(std::move(directions)) {
    if (dirs_.rows() != base_.size()) throw Error(ErrorCode::InvalidArgument, "direction rows must equal d");
    if (dirs_.cols() < 1 || dirs_.cols() > base_.size()) throw Error(ErrorCode::InvalidArgument, "need 1 <= a <= d");
    if (rank(dirs_) != dirs_.cols()) throw Error(ErrorCode::DependentColumns, "direction columns are dependent");
  }

  /// A 0-dimensional subspace (a point). Not a valid game arena but a valid target.
  static AffineSubspaceSpec point(AlgVector p) {
    AffineSubspaceSpec s;
    s.dirs_ = AlgMatrix(p.size(), 0);
    s.base_ = std::move(p);
    return s;
  }

  /// Subspace of any dimension >= 0 from a base and a (possibly empty) list of independent columns.
  static AffineSubspaceSpec from_columns(AlgVector base, const std::vector<AlgVector>& cols) {
    if (cols.empty()) return point(std::move(base));
    std::size_t d = base.size();
    return AffineSubspaceSpec(std::move(base), AlgMatrix::from_columns(cols, d));
  }

  std::size_t ambient_dim() const { return base_.size(); }
  std::size_t dim() const { return dirs_.cols(); }
  const AlgVector& base_point() const { return base_; }
  const AlgMatrix& directions() const { return dirs_; }
  std::vector<AlgVector> direction_columns() const { return dirs_.columns(); }

  FieldPtr field() const {
    for (const auto& x : base_)
      if (x.field()) return x.field();
    for (std::size_t i = 0; i < dirs_.rows(); ++i)
      for (std::size_t j = 0; j < dirs_.cols(); ++j)
        if (dirs_(i, j).field()) return dirs_(i, j).field();
    return nullptr;
  }

  AlgVector point_at(const AlgVector& params) const {
    AlgVector x = base_;
    for (std::size_t i = 0; i < ambient_dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) x[i] += dirs_(i, j) * params[j];
    return x;
  }

  /// Parameters of x if x lies on the subspace.
  std::optional<AlgVector> params_of(const AlgVector& x) const {
    AlgVector rhs(ambient_dim());
    for (std::size_t i = 0; i < ambient_dim(); ++i) rhs[i] = x[i] - base_[i];
    if (dim() == 0) {
      for (const auto& v : rhs)
        if (!v.is_zero()) return std::nullopt;
      return AlgVector{};
    }
    return solve(dirs_, rhs);
  }

  bool contains(const AlgVector& x) const { return params_of(x).has_value(); }

  /// Whether this subspace lies inside `other`.
  bool inside(const AffineSubspaceSpec& other) const {
    if (!other.contains(base_)) return false;
    for (std::size_t j = 0; j < dim(); ++j) {
      AlgVector tip = base_;
      for (std::size_t i = 0; i < ambient_dim(); ++i) tip[i] += dirs_(i, j);
      if (!other.contains(tip)) return false;
    }
    return true;
  }

  SupnormSet as_set() const { return SupnormSet::affine(base_, direction_columns()); }

  nlohmann::json to_json() const {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : direction_columns()) cols.push_back(jarnik::to_json(c));
    return {{"d", ambient_dim()}, {"a", dim()}, {"base", jarnik::to_json(base_)}, {"directions", cols}};
  }

  static AffineSubspaceSpec from_json(const nlohmann::json& j, const FieldPtr& field) {
    AlgVector base = alg_vector_from_json(j.at("base"), field);
    std::vector<AlgVector> cols;
    for (const auto& c : j.at("directions")) cols.push_back(alg_vector_from_json(c, field));
    for (const auto& c : cols)
      if (c.size() != base.size()) throw Error(ErrorCode::ParseError, "direction length must equal d");
    return from_columns(std::move(base), cols);
  }

 private:
  AlgVector base_;
  AlgMatrix dirs_;
};

/// Basis of span{(1, x) : x in A}, a linear subspace of R^(d+1) of dimension a+1.
struct LiftedSpan {
  AlgMatrix basis;  // (d+1) x (a+1)
};

inline LiftedSpan lift(const AffineSubspaceSpec& A) {
  std::size_t d = A.ambient_dim(), a = A.dim();
  AlgMatrix b(d + 1, a + 1);
  b(0, 0) = AlgebraicNumber(1);
  for (std::size_t i = 0; i < d; ++i) b(i + 1, 0) = A.base_point()[i];
  for (std::size_t j = 0; j < a; ++j) {
    b(0, j + 1) = AlgebraicNumber(0);
    for (std::size_t i = 0; i < d; ++i) b(i + 1, j + 1) = A.directions()(i, j);
  }
  return {std::move(b)};
}

/// A sublattice of Z^n given by its column HNF basis; equal lattices have equal bases.
struct IntegerSublattice {
  IntegerMatrix basis;

  std::size_t rank() const { return basis.cols(); }
  std::size_t ambient() const { return basis.rows(); }

  friend bool operator==(const IntegerSublattice& a, const IntegerSublattice& b) { return a.basis == b.basis; }
};

/// Integer points of the lifted span: Gamma(A) = span(lift A) cap Z^(d+1).
/// Membership is expanded over the power basis of the field, which is Q-independent
/// for an irreducible minimal polynomial.
inline IntegerSublattice gamma_lattice(const AffineSubspaceSpec& A) {
  LiftedSpan L = lift(A);
  std::size_t n = L.basis.rows();
  // Linear functionals vanishing on the span.
  auto normals = nullspace(L.basis.transpose());
  if (normals.empty()) return {IntegerMatrix::identity(n)};
  FieldPtr field = A.field();
  std::size_t deg = field ? static_cast<std::size_t>(field->degree()) : 1;
  RationalMatrix constraints(normals.size() * deg, n);
  for (std::size_t k = 0; k < normals.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = normals[k][i].coeffs();
      for (std::size_t p = 0; p < c.size() && p < deg; ++p) constraints(k * deg + p, i) = c[p];
    }
  }
  return {integer_kernel(clear_row_denominators(constraints))};
}

inline bool is_completely_rational(const AffineSubspaceSpec& A) { return gamma_lattice(A).rank() == A.dim() + 1; }

inline bool theorem4_applicable(const AffineSubspaceSpec& A) { return gamma_lattice(A).rank() < A.dim(); }

/// Intersection of two affine subspaces of R^d; nullopt when empty.
inline std::optional<AffineSubspaceSpec> intersect(const AffineSubspaceSpec& U, const AffineSubspaceSpec& V) {
  std::size_t d = U.ambient_dim();
  std::size_t ku = U.dim(), kv = V.dim();
  // U.base + U.dirs s = V.base + V.dirs t
  AlgMatrix m(d, ku + kv);
  AlgVector rhs(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < ku; ++j) m(i, j) = U.directions()(i, j);
    for (std::size_t j = 0; j < kv; ++j) m(i, ku + j) = -V.directions()(i, j);
    rhs[i] = V.base_point()[i] - U.base_point()[i];
  }
  std::optional<AlgVector> sol = (ku + kv == 0) ? std::optional<AlgVector>(AlgVector{}) : solve(m, rhs);
  if (ku + kv == 0) {
    for (const auto& r : rhs)
      if (!r.is_zero()) return std::nullopt;
  }
  if (!sol) return std::nullopt;
  AlgVector s(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(ku));
  AlgVector base = U.point_at(s);
  // Directions: U.dirs * (s-part of kernel vectors).
  std::vector<AlgVector> dirs;
  if (ku + kv > 0) {
    for (const auto& k : nullspace(m)) {
      AlgVector v(d, AlgebraicNumber(0));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < ku; ++j) v[i] += U.directions()(i, j) * k[j];
      dirs.push_back(std::move(v));
    }
  }
  if (!dirs.empty()) {
    AlgMatrix dm = AlgMatrix::from_columns(dirs, d);
    auto keep = independent_columns(dm);
    std::vector<AlgVector> indep;
    for (auto c : keep) indep.push_back(dirs[c]);
    dirs = std::move(indep);
  }
  return AffineSubspaceSpec::from_columns(std::move(base), dirs);
}

}  // namespace jarnik
