#pragma once

#include <optional>
#include <vector>

#include "jarnik/polyhedron.hpp"

namespace jarnik {

/// A set {base + sum_j s_j directions[j]} in R^d, optionally cut by the sup-norm box
/// ||x - box_center|| <= box_radius. Covers points, affine subspaces, full boxes
/// (d directions spanning R^d) and balls inside an affine subspace.
struct SupnormSet {
  AlgVector base;
  std::vector<AlgVector> directions;
  std::optional<AlgVector> box_center;
  AlgebraicNumber box_radius;
  bool full_space = false;  // directions span all of R^d (set is a plain box)

  std::size_t dim() const { return base.size(); }

  static SupnormSet point(AlgVector p) { return {std::move(p), {}, std::nullopt, AlgebraicNumber(0), false}; }

  static SupnormSet affine(AlgVector base, std::vector<AlgVector> dirs) {
    return {std::move(base), std::move(dirs), std::nullopt, AlgebraicNumber(0), false};
  }

  static SupnormSet box(AlgVector center, AlgebraicNumber radius) {
    std::size_t d = center.size();
    std::vector<AlgVector> dirs;
    for (std::size_t i = 0; i < d; ++i) {
      AlgVector e(d, AlgebraicNumber(0));
      e[i] = AlgebraicNumber(1);
      dirs.push_back(std::move(e));
    }
    AlgVector base = center;
    return {std::move(base), std::move(dirs), std::move(center), std::move(radius), true};
  }

  /// Ball B(center, radius) inside the affine subspace base + span(dirs); center must lie on it.
  static SupnormSet ball_in(AlgVector base, std::vector<AlgVector> dirs, AlgVector center, AlgebraicNumber radius) {
    return {std::move(base), std::move(dirs), std::move(center), std::move(radius), false};
  }
};

namespace detail {

// Appends lo <= (x_i(s) - offset_i) <= hi style rows for |x_i(s) - y_i(t)| <= delta.
inline void add_coordinate_rows(Polyhedron& p, const SupnormSet& a, std::size_t a_off, const SupnormSet& b,
                                std::size_t b_off, std::size_t delta_var) {
  std::size_t n = p.num_vars();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    AlgVector diff(n, AlgebraicNumber(0));
    for (std::size_t j = 0; j < a.directions.size(); ++j) diff[a_off + j] += a.directions[j][i];
    for (std::size_t j = 0; j < b.directions.size(); ++j) diff[b_off + j] -= b.directions[j][i];
    AlgebraicNumber c = a.base[i] - b.base[i];
    // delta - diff - c >= 0 and delta + diff + c >= 0
    AlgVector up(n), dn(n);
    for (std::size_t k = 0; k < n; ++k) {
      up[k] = -diff[k];
      dn[k] = diff[k];
    }
    up[delta_var] += AlgebraicNumber(1);
    dn[delta_var] += AlgebraicNumber(1);
    p.add_ge(std::move(up), -c);
    p.add_ge(std::move(dn), c);
  }
}

inline void add_box_rows(Polyhedron& p, const SupnormSet& a, std::size_t a_off,
                         std::optional<std::size_t> slack_var = std::nullopt) {
  if (!a.box_center) return;
  std::size_t n = p.num_vars();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    AlgVector x(n, AlgebraicNumber(0));
    for (std::size_t j = 0; j < a.directions.size(); ++j) x[a_off + j] = a.directions[j][i];
    AlgebraicNumber c = a.base[i] - (*a.box_center)[i];
    // radius (+ slack) - x - c >= 0 ; radius (+ slack) + x + c >= 0
    AlgVector up(n), dn(n);
    for (std::size_t k = 0; k < n; ++k) {
      up[k] = -x[k];
      dn[k] = x[k];
    }
    if (slack_var) {
      up[*slack_var] += AlgebraicNumber(1);
      dn[*slack_var] += AlgebraicNumber(1);
    }
    p.add_ge(std::move(up), a.box_radius - c);
    p.add_ge(std::move(dn), a.box_radius + c);
  }
}

}  // namespace detail

/// Exact inf over u in a, v in b of ||u - v||_inf. Zero iff the sets meet.
inline AlgebraicNumber supnorm_distance(const SupnormSet& a, const SupnormSet& b,
                                        const FourierMotzkinOptions& opts = {}) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidArgument, "ambient dimension mismatch");
  if (a.box_center && a.box_radius.sign() < 0) throw Error(ErrorCode::EmptySet, "negative radius");
  if (b.box_center && b.box_radius.sign() < 0) throw Error(ErrorCode::EmptySet, "negative radius");
  if (a.full_space && b.full_space) {
    AlgVector diff(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) diff[i] = (*a.box_center)[i] - (*b.box_center)[i];
    AlgebraicNumber gap = sup_norm(diff) - a.box_radius - b.box_radius;
    return gap.sign() > 0 ? gap : AlgebraicNumber(0);
  }
  if (a.full_space && !b.full_space) return supnorm_distance(b, a, opts);
  Minimum m;
  if (b.full_space) {
    // The free box variables collapse: |x(s) - c| <= radius + delta.
    std::size_t k = a.directions.size();
    Polyhedron p(k + 1);
    detail::add_box_rows(p, a, 0);
    SupnormSet shifted = a;
    shifted.box_center = b.box_center;
    shifted.box_radius = b.box_radius;
    detail::add_box_rows(p, shifted, 0, k);
    AlgVector pos(k + 1, AlgebraicNumber(0));
    pos[k] = AlgebraicNumber(1);
    p.add_ge(std::move(pos), AlgebraicNumber(0));
    m = polyhedron_minimize(p, k, opts);
  } else {
    std::size_t ka = a.directions.size(), kb = b.directions.size();
    Polyhedron p(ka + kb + 1);
    std::size_t delta = ka + kb;
    detail::add_coordinate_rows(p, a, 0, b, ka, delta);
    detail::add_box_rows(p, a, 0);
    detail::add_box_rows(p, b, ka);
    AlgVector pos(ka + kb + 1, AlgebraicNumber(0));
    pos[delta] = AlgebraicNumber(1);
    p.add_ge(std::move(pos), AlgebraicNumber(0));
    m = polyhedron_minimize(p, delta, opts);
  }
  if (!m.feasible) throw Error(ErrorCode::EmptySet, "one of the sets is empty");
  if (!m.bounded) throw Error(ErrorCode::InvalidArgument, "distance problem unbounded");
  return m.value;
}

/// Exact test for a nonempty intersection.
inline bool sets_intersect(const SupnormSet& a, const SupnormSet& b, const FourierMotzkinOptions& opts = {}) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidArgument, "ambient dimension mismatch");
  std::size_t ka = a.directions.size(), kb = b.directions.size();
  Polyhedron p(ka + kb);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    AlgVector row(ka + kb, AlgebraicNumber(0));
    for (std::size_t j = 0; j < ka; ++j) row[j] = a.directions[j][i];
    for (std::size_t j = 0; j < kb; ++j) row[ka + j] = -b.directions[j][i];
    p.add_eq(std::move(row), a.base[i] - b.base[i]);
  }
  detail::add_box_rows(p, a, 0);
  detail::add_box_rows(p, b, ka);
  return polyhedron_feasible(p, opts);
}

}  // namespace jarnik
