#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "jarnik/catalog.hpp"

namespace jarnik {

namespace detail {

/// Double view of a coordinate with an absolute error bound.
struct ApproxCoord {
  double value = 0;
  double err = 0;
};

inline ApproxCoord approx(const AlgebraicNumber& x) {
  double v = x.to_double();
  return {v, std::abs(v) * 0x1p-50 + 1e-300};
}

/// Bracket [lo, hi] on ||q x|| from the double view; valid while the error stays below 1/4.
inline std::pair<double, double> dist_bracket(const ApproxCoord& x, std::uint64_t q) {
  double qd = static_cast<double>(q);
  double y = qd * x.value;
  double err = qd * x.err + std::abs(y) * 0x1p-51 + 1e-12;
  if (err >= 0.25) return {0.0, 0.5};
  double d = std::abs(y - std::nearbyint(y));
  return {std::max(0.0, d - err), std::min(0.5, d + err)};
}

}  // namespace detail

struct QualityRecord {
  std::uint64_t q = 1;
  AlgVector dists;
  AlgebraicNumber max_dist;
  AlgebraicNumber normalized_pow;  // q * max_dist^a, the a-th power of the normalized value
  double normalized = 0;           // q^(1/a) * max_dist
  unsigned a = 1;
};

inline QualityRecord quality(const AlgVector& xi, std::uint64_t q, unsigned a) {
  if (q < 1) throw Error(ErrorCode::InvalidArgument, "q must be positive");
  if (a < 1) throw Error(ErrorCode::InvalidArgument, "a must be positive");
  QualityRecord r;
  r.q = q;
  r.a = a;
  r.max_dist = AlgebraicNumber(0);
  AlgebraicNumber qq{Integer(static_cast<unsigned long>(q))};
  for (const auto& x : xi) {
    AlgebraicNumber dq = dist_to_nearest_int(qq * x);
    if (dq > r.max_dist) r.max_dist = dq;
    r.dists.push_back(std::move(dq));
  }
  r.normalized_pow = qq * r.max_dist.pow(a);
  r.normalized = std::pow(static_cast<double>(q), 1.0 / a) * r.max_dist.to_double();
  return r;
}

struct ProfilePoint {
  std::uint64_t t = 0;
  std::uint64_t argmin_q = 0;
  AlgebraicNumber min_dist;  // min_{q <= t} max_i ||q xi_i||
  AlgebraicNumber value;     // t * min_dist
};

/// t * min_{1<=q<=t} max_i ||q xi_i|| for t = 1..t_max.
inline std::vector<ProfilePoint> jarnik_profile(const AlgVector& xi, std::uint64_t t_max) {
  if (t_max < 1) throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  std::vector<detail::ApproxCoord> ax;
  for (const auto& x : xi) ax.push_back(detail::approx(x));
  std::vector<ProfilePoint> out;
  out.reserve(t_max);
  std::optional<AlgebraicNumber> best;
  std::uint64_t best_q = 0;
  double best_hi = 1.0;
  for (std::uint64_t q = 1; q <= t_max; ++q) {
    bool candidate = !best;
    if (!candidate) {
      // The maximum exceeds the running minimum if some coordinate does.
      double lo = 0;
      for (const auto& c : ax) lo = std::max(lo, detail::dist_bracket(c, q).first);
      candidate = lo <= best_hi;
    }
    if (candidate) {
      QualityRecord r = quality(xi, q, 1);
      if (!best || r.max_dist < *best) {
        best = r.max_dist;
        best_q = q;
        best_hi = best->to_double() + 1e-12;
      }
    }
    AlgebraicNumber tq{Integer(static_cast<unsigned long>(q))};
    out.push_back({q, best_q, *best, tq * *best});
  }
  return out;
}

/// All q <= q_max with max_i ||q xi_i|| <= gamma q^(-1/a), compared as q * max^a <= gamma^a.
inline std::vector<std::uint64_t> dirichlet_verify(const AffineSubspaceSpec& A, const AlgVector& xi,
                                                   const Rational& gamma, std::uint64_t q_max) {
  if (gamma <= 0) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  if (!is_completely_rational(A)) throw Error(ErrorCode::InvalidArgument, "subspace is not completely rational");
  if (!A.contains(xi)) throw Error(ErrorCode::PointNotOnSubspace, "point does not lie on the subspace");
  auto a = static_cast<unsigned>(A.dim());
  AlgebraicNumber gamma_pow(pow_q(gamma, a));
  std::vector<detail::ApproxCoord> ax;
  for (const auto& x : xi) ax.push_back(detail::approx(x));
  double g = gamma.get_d();
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    double thr = g * std::pow(static_cast<double>(q), -1.0 / a);
    bool clear_fail = false;
    for (const auto& c : ax) {
      if (detail::dist_bracket(c, q).first > thr * (1 + 1e-9) + 1e-12) {
        clear_fail = true;
        break;
      }
    }
    if (clear_fail) continue;
    QualityRecord r = quality(xi, q, a);
    if (r.normalized_pow <= gamma_pow) out.push_back(q);
  }
  return out;
}

/// Squares of the Lemma 2 constants; kappa and T are irrational in general.
struct Lemma2Constants {
  unsigned d = 0;
  unsigned a = 0;
  AlgebraicNumber kappa_sq;
  AlgebraicNumber sigma_sq;
  std::optional<Rational> sigma_w_sq;  // worst case over the box max|xi_i| <= W
  AlgebraicNumber t_pow;               // T^(2(a+1)) = sigma^2 det^2 rho^(-2a)
  unsigned t_exponent = 0;             // 2(a+1)
  double kappa = 0;
  double sigma = 0;
  double t = 0;
};

inline Rational lemma2_sigma_w_sq(unsigned d, unsigned a, const Rational& W) {
  Integer f = factorial(a + 1);
  Rational inner = 1 + (W + 1) * (W + 1) * d;
  return Rational(1) / (pow_q(Rational(4 * d), a) * inner * Rational(f * f));
}

inline AlgebraicNumber lemma2_kappa_sq(unsigned d, unsigned a, const AlgVector& xi) {
  AlgebraicNumber s(1);
  for (const auto& x : xi) {
    AlgebraicNumber v = abs(x) + AlgebraicNumber(1);
    s += v * v;
  }
  return AlgebraicNumber(pow_q(Rational(4 * d), a)) * s;
}

/// T^(2(a+1)) for a given sigma^2, squared determinant and radius.
inline AlgebraicNumber lemma2_t_pow(const AlgebraicNumber& sigma_sq, const Rational& det_sq, const AlgebraicNumber& rho,
                                    unsigned a) {
  return sigma_sq * AlgebraicNumber(det_sq) * rho.pow(2 * a).inverse();
}

/// Point form: kappa, sigma at xi; T uses sigma.
inline Lemma2Constants lemma2_constants(unsigned d, unsigned a, const AlgVector& xi, const AlgebraicNumber& rho,
                                        const Rational& det_sq) {
  if (rho.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
  if (det_sq < 1) throw Error(ErrorCode::InvalidArgument, "det_sq must be >= 1");
  if (xi.size() != d) throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
  Lemma2Constants c;
  c.d = d;
  c.a = a;
  c.kappa_sq = lemma2_kappa_sq(d, a, xi);
  Integer f = factorial(a + 1);
  c.sigma_sq = (c.kappa_sq * AlgebraicNumber(Integer(f * f))).inverse();
  c.t_exponent = 2 * (a + 1);
  c.t_pow = lemma2_t_pow(c.sigma_sq, det_sq, rho, a);
  c.kappa = std::sqrt(c.kappa_sq.to_double());
  c.sigma = std::sqrt(c.sigma_sq.to_double());
  c.t = std::pow(c.t_pow.to_double(), 1.0 / c.t_exponent);
  return c;
}

/// Box form: Sigma_{a,d,W} replaces sigma, valid for every xi with max|xi_i| <= W.
inline Lemma2Constants lemma2_constants(unsigned d, unsigned a, const Rational& W, const AlgebraicNumber& rho,
                                        const Rational& det_sq) {
  if (rho.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
  if (det_sq < 1) throw Error(ErrorCode::InvalidArgument, "det_sq must be >= 1");
  if (W <= 0) throw Error(ErrorCode::InvalidArgument, "W must be positive");
  Lemma2Constants c;
  c.d = d;
  c.a = a;
  c.kappa_sq = AlgebraicNumber(pow_q(Rational(4 * d), a) * (1 + (W + 1) * (W + 1) * d));
  Integer f = factorial(a + 1);
  c.sigma_w_sq = lemma2_sigma_w_sq(d, a, W);
  c.sigma_sq = AlgebraicNumber(*c.sigma_w_sq);
  c.t_exponent = 2 * (a + 1);
  c.t_pow = lemma2_t_pow(c.sigma_sq, det_sq, rho, a);
  c.kappa = std::sqrt(c.kappa_sq.to_double());
  c.sigma = std::sqrt(c.sigma_sq.to_double());
  c.t = std::pow(c.t_pow.to_double(), 1.0 / c.t_exponent);
  return c;
}

struct RationalPoint {
  std::uint64_t q = 1;
  std::vector<std::int64_t> b;

  AlgVector as_vector() const {
    AlgVector v;
    for (auto x : b) v.emplace_back(ratio(Integer(static_cast<long>(x)), Integer(static_cast<unsigned long>(q))));
    return v;
  }

  friend bool operator==(const RationalPoint& x, const RationalPoint& y) { return x.q == y.q && x.b == y.b; }
  friend bool operator<(const RationalPoint& x, const RationalPoint& y) {
    return x.q != y.q ? x.q < y.q : x.b < y.b;
  }
};

namespace detail {

/// floor(q * x) with a double fast path and exact fallback.
inline std::int64_t scaled_floor(const AlgebraicNumber& x, const ApproxCoord& ax, std::uint64_t q) {
  double qd = static_cast<double>(q);
  double y = qd * ax.value;
  double err = qd * ax.err + std::abs(y) * 0x1p-51 + 1e-12;
  double f = std::floor(y);
  if (y - err >= f && y + err < f + 1) return static_cast<std::int64_t>(f);
  return (AlgebraicNumber(Integer(static_cast<unsigned long>(q))) * x).floor().get_si();
}

}  // namespace detail

/// Primitive rational points b/q in the box ||x - center|| <= rho with q^power <= bound
/// (q^power < bound when strict).
inline std::vector<RationalPoint> rational_points_in_box(const AlgVector& center, const AlgebraicNumber& rho,
                                                         unsigned power, const AlgebraicNumber& bound,
                                                         bool strict = false) {
  if (rho.sign() < 0) throw Error(ErrorCode::InvalidArgument, "rho must be nonnegative");
  std::size_t d = center.size();
  AlgVector lo(d), hi(d);
  std::vector<detail::ApproxCoord> alo(d), ahi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = -(center[i] - rho);  // ceil(q lo) = -floor(-q lo)
    hi[i] = center[i] + rho;
    alo[i] = detail::approx(lo[i]);
    ahi[i] = detail::approx(hi[i]);
  }
  std::vector<RationalPoint> out;
  for (std::uint64_t q = 1;; ++q) {
    AlgebraicNumber qp{pow_z(Integer(static_cast<unsigned long>(q)), power)};
    if (strict ? !(qp < bound) : qp > bound) break;
    std::vector<std::int64_t> from(d), to(d);
    bool empty = false;
    for (std::size_t i = 0; i < d && !empty; ++i) {
      from[i] = -detail::scaled_floor(lo[i], alo[i], q);
      to[i] = detail::scaled_floor(hi[i], ahi[i], q);
      empty = from[i] > to[i];
    }
    if (empty) continue;
    std::vector<std::int64_t> b = from;
    while (true) {
      std::int64_t g = static_cast<std::int64_t>(q);
      for (auto x : b) g = std::gcd(g, x);
      if (g == 1) out.push_back({q, b});
      std::size_t i = 0;
      while (i < d && b[i] == to[i]) {
        b[i] = from[i];
        ++i;
      }
      if (i == d) break;
      ++b[i];
    }
  }
  return out;
}

/// Largest q >= 0 with q^power < bound.
inline std::uint64_t max_q_below(const Rational& bound, unsigned power) {
  if (bound <= 1) return 0;
  double est = std::pow(bound.get_d(), 1.0 / power);
  auto q = static_cast<std::uint64_t>(std::max(0.0, std::min(est, 1e18)));
  auto below = [&](std::uint64_t x) { return Rational(pow_z(Integer(static_cast<unsigned long>(x)), power)) < bound; };
  while (q > 0 && !below(q)) --q;
  while (below(q + 1)) ++q;
  return q;
}

struct LinearBoundScan {
  std::uint64_t q_checked = 0;
  std::optional<std::uint64_t> first_failure;
};

/// Checks max_i ||q xi_i|| >= coeff * q for q = 1..q_max, exactly.
inline LinearBoundScan scan_linear_lower_bound(const AlgVector& xi, const AlgebraicNumber& coeff, std::uint64_t q_max) {
  std::vector<detail::ApproxCoord> ax;
  for (const auto& x : xi) ax.push_back(detail::approx(x));
  double c = coeff.to_double();
  LinearBoundScan out;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    ++out.q_checked;
    double need = c * static_cast<double>(q);
    double hi = 0;
    bool clear = false;
    for (const auto& a : ax) {
      auto br = detail::dist_bracket(a, q);
      hi = std::max(hi, br.second);
      if (br.first > need * (1 + 1e-9) + 1e-12) clear = true;
    }
    if (clear) continue;
    AlgebraicNumber qq{Integer(static_cast<unsigned long>(q))};
    if (hi < need * (1 - 1e-9) - 1e-12 || quality(xi, q, 1).max_dist < coeff * qq) {
      out.first_failure = q;
      return out;
    }
  }
  return out;
}

struct AffineHull {
  int dim = -1;
  std::optional<AffineSubspaceSpec> spec;
};

inline AffineHull affine_hull(const std::vector<AlgVector>& points) {
  if (points.empty()) return {};
  const AlgVector& p0 = points.front();
  std::size_t d = p0.size();
  std::vector<AlgVector> diffs;
  for (std::size_t k = 1; k < points.size(); ++k) {
    AlgVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = points[k][i] - p0[i];
    diffs.push_back(std::move(v));
  }
  std::vector<AlgVector> dirs;
  if (!diffs.empty()) {
    for (auto c : independent_columns(AlgMatrix::from_columns(diffs, d))) dirs.push_back(diffs[c]);
  }
  AffineHull h;
  h.dim = static_cast<int>(dirs.size());
  h.spec = AffineSubspaceSpec::from_columns(p0, dirs);
  return h;
}

inline AffineHull affine_hull(const std::vector<RationalPoint>& points) {
  std::vector<AlgVector> v;
  for (const auto& p : points) v.push_back(p.as_vector());
  return affine_hull(v);
}

struct Lemma2Report {
  bool applicable = false;          // the box avoids at least V_1
  std::size_t n = 0;                // the box avoids V_1..V_n
  std::size_t k = 0;                // nu_k <= n < nu_{k+1}
  bool horizon_limited = false;     // n is the catalog size, not the true first blocker minus one
  Rational det_sq_n;                // d_n, the value used
  std::optional<Rational> det_sq_nu_n;  // d_{nu_n}, the literal subscript, when nu_n exists
  Lemma2Constants constants;
  std::vector<RationalPoint> points;
  AffineHull hull;
  bool passed = true;
};

/// Verifies that rational points with q <= T in the box span at most an (a-1)-dim subspace.
inline Lemma2Report lemma2_check(const AlgVector& center, const AlgebraicNumber& rho, const SubspaceCatalog& catalog) {
  Lemma2Report rep;
  BlockedIndex bi = first_blocked_index(center, rho, catalog);
  rep.horizon_limited = bi.horizon_limited;
  rep.n = bi.m ? *bi.m - 1 : catalog.size();
  if (rep.n == 0) return rep;
  rep.applicable = true;
  rep.k = catalog.group_count_upto(rep.n);
  rep.det_sq_n = catalog.det_sq(rep.n);
  if (rep.n <= catalog.distinct_values()) rep.det_sq_nu_n = catalog.det_sq_of_group(rep.n);
  auto d = static_cast<unsigned>(catalog.ambient_dim());
  auto a = static_cast<unsigned>(catalog.dim());
  rep.constants = lemma2_constants(d, a, center, rho, rep.det_sq_n);
  rep.points = rational_points_in_box(center, rho, rep.constants.t_exponent, rep.constants.t_pow);
  rep.hull = affine_hull(rep.points);
  rep.passed = rep.hull.dim <= static_cast<int>(a) - 1;
  return rep;
}

}  // namespace jarnik
