#pragma once

// The (alpha, beta)-game on an affine arena A with sup-norm balls, escape moves,
// and Black adversaries.

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "jarnik/diophantine.hpp"

namespace jarnik {

struct GameParams {
  Rational alpha{1, 2};
  Rational beta{1, 2};
  unsigned t = 2;
  Rational rho0{1};
  Rational W{1};

  Rational gamma() const { return 1 + alpha * beta - 2 * alpha; }
  Rational ab() const { return alpha * beta; }

  /// Radius of the Black ball B_j.
  Rational black_radius(std::size_t j) const { return rho0 * pow_q(ab(), static_cast<unsigned>(j)); }

  /// Smallest t with (alpha beta)^t < gamma / 2 (requires gamma > 0).
  static unsigned minimal_t(const Rational& alpha, const Rational& beta) {
    Rational g = 1 + alpha * beta - 2 * alpha;
    if (g <= 0) throw Error(ErrorCode::ConfigInvalid, "gamma = 1 + alpha*beta - 2*alpha must be positive");
    Rational p = alpha * beta;
    unsigned t = 1;
    while (!(p < g / 2)) {
      p *= alpha * beta;
      ++t;
    }
    return t;
  }

  void validate() const {
    if (alpha <= 0 || alpha >= 1 || beta <= 0 || beta >= 1)
      throw Error(ErrorCode::ConfigInvalid, "alpha and beta must lie in (0,1)");
    if (gamma() <= 0)
      throw Error(ErrorCode::ConfigInvalid, "gamma = " + format_rational(gamma()) + " is not positive");
    if (t < 1 || !(pow_q(ab(), t) < gamma() / 2))
      throw Error(ErrorCode::ConfigInvalid, "(alpha*beta)^t < gamma/2 fails for t = " + std::to_string(t));
    if (rho0 <= 0) throw Error(ErrorCode::ConfigInvalid, "rho0 must be positive");
    if (W <= 0) throw Error(ErrorCode::ConfigInvalid, "W must be positive");
  }

  nlohmann::json to_json() const {
    return {{"alpha", format_rational(alpha)}, {"beta", format_rational(beta)}, {"t", t},
            {"rho0", format_rational(rho0)},   {"W", format_rational(W)},       {"gamma", format_rational(gamma())}};
  }

  static GameParams from_json(const nlohmann::json& j) {
    GameParams p;
    p.alpha = parse_rational(j.at("alpha").get<std::string>());
    p.beta = parse_rational(j.at("beta").get<std::string>());
    p.t = j.contains("t") ? j.at("t").get<unsigned>() : minimal_t(p.alpha, p.beta);
    p.rho0 = parse_rational(j.at("rho0").get<std::string>());
    p.W = parse_rational(j.at("W").get<std::string>());
    return p;
  }
};

/// B(center, radius) = {x in A : ||x - center|| <= radius}.
struct Ball {
  AlgVector center;
  Rational radius;

  nlohmann::json to_json() const { return {{"center", jarnik::to_json(center)}, {"radius", format_rational(radius)}}; }
  static Ball from_json(const nlohmann::json& j, const FieldPtr& field) {
    return {alg_vector_from_json(j.at("center"), field), parse_rational(j.at("radius").get<std::string>())};
  }
};

inline bool identical(const AlgVector& a, const AlgVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].identical(b[i])) return false;
  return true;
}

inline AlgebraicNumber dot(const AlgVector& a, const AlgVector& b) {
  AlgebraicNumber s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// The arena A together with the vertices of its unit sup-ball, {D u : ||D u|| <= 1}.
class Arena {
 public:
  Arena() = default;
  explicit Arena(AffineSubspaceSpec spec) : spec_(std::move(spec)) { compute_steps(); }

  const AffineSubspaceSpec& spec() const { return spec_; }
  std::size_t ambient_dim() const { return spec_.ambient_dim(); }
  std::size_t dim() const { return spec_.dim(); }

  /// Vertices of the unit ball of A, as displacement vectors in R^d. Symmetric: -s is listed too.
  const std::vector<AlgVector>& unit_steps() const { return steps_; }

  bool contains(const AlgVector& x) const { return spec_.contains(x); }

  /// center + scale * step
  static AlgVector displace(const AlgVector& center, const AlgVector& step, const Rational& scale) {
    AlgVector out = center;
    AlgebraicNumber s(scale);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * step[i];
    return out;
  }

  SupnormSet ball_set(const Ball& b) const {
    return SupnormSet::ball_in(spec_.base_point(), spec_.direction_columns(), b.center, AlgebraicNumber(b.radius));
  }

 private:
  void compute_steps() {
    std::size_t d = ambient_dim(), a = dim();
    const AlgMatrix& D = spec_.directions();
    std::vector<std::size_t> rows(a);
    auto consider = [&](const std::vector<std::size_t>& S) {
      AlgMatrix sub(a, a);
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j) sub(i, j) = D(S[i], j);
      if (rank(sub) != a) return;
      for (std::size_t mask = 0; mask < (std::size_t{1} << a); ++mask) {
        AlgVector rhs(a);
        for (std::size_t i = 0; i < a; ++i) rhs[i] = AlgebraicNumber((mask >> i) & 1 ? -1 : 1);
        auto u = solve(sub, rhs);
        if (!u) continue;
        AlgVector step(d, AlgebraicNumber(0));
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < a; ++j) step[i] += D(i, j) * (*u)[j];
        if (sup_norm(step) > AlgebraicNumber(1)) continue;
        bool dup = false;
        for (const auto& s : steps_) dup = dup || identical(s, step);
        if (!dup) steps_.push_back(std::move(step));
      }
    };
    // All a-subsets of the d rows.
    std::vector<bool> pick(d, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(a), true);
    do {
      std::vector<std::size_t> S;
      for (std::size_t i = 0; i < d; ++i)
        if (pick[i]) S.push_back(i);
      consider(S);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }

  AffineSubspaceSpec spec_;
  std::vector<AlgVector> steps_;
};

enum class Side { White, Black };

inline std::string side_name(Side s) { return s == Side::White ? "white" : "black"; }

/// Radius ratio is exact and next is contained in prev (and lies in A).
inline bool legal_move(const Ball& prev, const Ball& next, Side side, const GameParams& params, const Arena& arena) {
  Rational ratio = side == Side::White ? params.alpha : params.beta;
  if (next.radius != prev.radius * ratio) return false;
  if (next.center.size() != prev.center.size()) return false;
  AlgVector diff(prev.center.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = prev.center[i] - next.center[i];
  if (sup_norm(diff) > AlgebraicNumber(prev.radius - next.radius)) return false;
  return arena.contains(next.center);
}

/// Exact sup-norm distance from a ball of A to an affine subspace of R^d.
inline AlgebraicNumber ball_distance(const Arena& arena, const Ball& b, const AffineSubspaceSpec& V) {
  SupnormSet target = V.dim() == 0 ? SupnormSet::point(V.base_point()) : V.as_set();
  return supnorm_distance(arena.ball_set(b), target);
}

/// dist(x, V) = max over w in ext{||w||_1 <= 1, w orthogonal to V} of w.(x - v0).
struct EscapeTarget {
  AffineSubspaceSpec V;
  std::vector<AlgVector> pieces;

  explicit EscapeTarget(AffineSubspaceSpec v) : V(std::move(v)) { compute_pieces(); }

 private:
  void compute_pieces() {
    std::size_t d = V.ambient_dim(), k = V.dim();
    const AlgMatrix& F = V.directions();
    for (std::size_t size = 1; size <= std::min(d, k + 1); ++size) {
      std::vector<bool> pick(d, false);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
      do {
        std::vector<std::size_t> S;
        for (std::size_t i = 0; i < d; ++i)
          if (pick[i]) S.push_back(i);
        for (std::size_t mask = 0; mask < (std::size_t{1} << size); ++mask) {
          // F_S^T w_S = 0, sum sign_i w_i = 1
          AlgMatrix m(k + 1, size);
          AlgVector rhs(k + 1, AlgebraicNumber(0));
          for (std::size_t c = 0; c < size; ++c) {
            for (std::size_t r = 0; r < k; ++r) m(r, c) = F(S[c], r);
            m(k, c) = AlgebraicNumber((mask >> c) & 1 ? -1 : 1);
          }
          rhs[k] = AlgebraicNumber(1);
          if (rank(m) != size) continue;
          auto sol = solve(m, rhs);
          if (!sol) continue;
          bool ok = true;
          for (std::size_t c = 0; c < size && ok; ++c) {
            int s = (*sol)[c].sign();
            ok = s != 0 && (((mask >> c) & 1) ? s < 0 : s > 0);
          }
          if (!ok) continue;
          AlgVector w(d, AlgebraicNumber(0));
          for (std::size_t c = 0; c < size; ++c) w[S[c]] = (*sol)[c];
          bool dup = false;
          for (const auto& p : pieces) dup = dup || identical(p, w);
          if (!dup) pieces.push_back(std::move(w));
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  }
};

/// A linear lower bound phi(x) = w.(x - v0) <= dist(x, V), with its rate nu over the unit ball of A.
struct EscapePiece {
  AlgVector w;
  AlgebraicNumber nu;        // max over unit steps of w.s, at most 1
  AlgebraicNumber value;     // phi at the center when chosen
  std::size_t best_step = 0;   // step maximizing w.s
  std::size_t worst_step = 0;  // step minimizing w.s
  bool full_rate = false;      // nu == 1, so the escape guarantee applies

  AlgebraicNumber phi(const AlgVector& x, const AlgVector& v0) const {
    AlgebraicNumber s(0);
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * (x[i] - v0[i]);
    return s;
  }
};

inline EscapePiece evaluate_piece(const AlgVector& w, const AlgVector& center, const EscapeTarget& target,
                                  const Arena& arena) {
  EscapePiece p;
  p.w = w;
  const auto& steps = arena.unit_steps();
  AlgebraicNumber best, worst;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    AlgebraicNumber v = dot(w, steps[i]);
    if (i == 0 || v > best) {
      best = v;
      p.best_step = i;
    }
    if (i == 0 || v < worst) {
      worst = v;
      p.worst_step = i;
    }
  }
  p.nu = best;
  p.full_rate = best == AlgebraicNumber(1);
  p.value = p.phi(center, target.V.base_point());
  return p;
}

/// Full-rate pieces first, then the largest value at the center; ties keep enumeration order.
inline EscapePiece choose_piece(const EscapeTarget& target, const AlgVector& center, const Arena& arena) {
  std::optional<EscapePiece> best;
  for (const auto& w : target.pieces) {
    EscapePiece p = evaluate_piece(w, center, target, arena);
    if (!best || (p.full_rate && !best->full_rate) || (p.full_rate == best->full_rate && p.value > best->value))
      best = std::move(p);
  }
  if (!best) throw Error(ErrorCode::InvalidArgument, "escape target has no distance pieces");
  return *best;
}

/// What a Black adversary may look at: the rules, the arena and White's current escape piece.
struct BlackContext {
  const GameParams* params = nullptr;
  const Arena* arena = nullptr;
  const SubspaceCatalog* catalog = nullptr;
  const EscapePiece* threat = nullptr;
  std::size_t round = 0;
};

class BlackStrategy {
 public:
  virtual ~BlackStrategy() = default;
  virtual std::string name() const = 0;
  virtual Ball reply(const Ball& white, const BlackContext& ctx) = 0;
  virtual bool scripted() const { return false; }
};

/// Pulls the ball toward White's active target; otherwise toward the nearest catalog slice
/// or low-denominator rational point within reach.
class GreedyBlack : public BlackStrategy {
 public:
  explicit GreedyBlack(std::size_t scan_limit = 256, std::uint64_t max_denominator = 64)
      : scan_limit_(scan_limit), max_q_(max_denominator) {}

  std::string name() const override { return "greedy"; }

  Ball reply(const Ball& white, const BlackContext& ctx) override {
    const Arena& arena = *ctx.arena;
    Rational next_radius = white.radius * ctx.params->beta;
    Rational reach = white.radius - next_radius;
    if (ctx.threat) {
      return {Arena::displace(white.center, arena.unit_steps()[ctx.threat->worst_step], reach), next_radius};
    }
    std::optional<EscapeTarget> nearest = nearest_target(white, ctx);
    if (!nearest) return {white.center, next_radius};
    EscapePiece p = choose_piece(*nearest, white.center, arena);
    return {Arena::displace(white.center, arena.unit_steps()[p.worst_step], reach), next_radius};
  }

 private:
  std::optional<EscapeTarget> nearest_target(const Ball& white, const BlackContext& ctx) const {
    std::vector<AffineSubspaceSpec> candidates;
    AlgebraicNumber box(white.radius * 2);
    if (ctx.catalog) {
      std::size_t limit = std::min(scan_limit_, ctx.catalog->size());
      for (std::size_t j = 1; j <= limit && candidates.size() < 4; ++j) {
        const auto& V = ctx.catalog->at(j);
        if (!box_meets(V, white.center, box)) continue;
        candidates.push_back(V.affine_part());
      }
    }
    auto pts = rational_points_in_box(white.center, box, 1, AlgebraicNumber(Integer(static_cast<unsigned long>(max_q_))));
    for (std::size_t i = 0; i < pts.size() && i < 4; ++i) candidates.push_back(AffineSubspaceSpec::point(pts[i].as_vector()));
    std::optional<std::size_t> best;
    AlgebraicNumber best_d;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      SupnormSet target = candidates[i].dim() == 0 ? SupnormSet::point(candidates[i].base_point()) : candidates[i].as_set();
      AlgebraicNumber dd = supnorm_distance(SupnormSet::point(white.center), target);
      if (!best || dd < best_d) {
        best = i;
        best_d = dd;
      }
    }
    if (!best) return std::nullopt;
    return EscapeTarget(candidates[*best]);
  }

  std::size_t scan_limit_;
  std::uint64_t max_q_;
};

/// Uniformly seeded random legal replies; centers stay in the arena's field.
class RandomBlack : public BlackStrategy {
 public:
  explicit RandomBlack(std::uint64_t seed) : seed_(seed), rng_(seed) {}

  std::string name() const override { return "random:" + std::to_string(seed_); }

  Ball reply(const Ball& white, const BlackContext& ctx) override {
    const auto& steps = ctx.arena->unit_steps();
    Rational next_radius = white.radius * ctx.params->beta;
    Rational reach = white.radius - next_radius;
    std::size_t i = rng_() % steps.size();
    std::size_t k = rng_() % steps.size();
    Rational lambda = ratio(static_cast<long>(rng_() % 17), 16);
    Rational mu = ratio(static_cast<long>(rng_() % 9), 8);
    AlgVector step(steps[i].size());
    for (std::size_t c = 0; c < step.size(); ++c)
      step[c] = AlgebraicNumber(lambda) * steps[i][c] + AlgebraicNumber(1 - lambda) * steps[k][c];
    return {Arena::displace(white.center, step, reach * mu), next_radius};
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

/// Follows a list of recorded Black centers.
class ReplayBlack : public BlackStrategy {
 public:
  explicit ReplayBlack(std::vector<AlgVector> centers) : centers_(std::move(centers)) {}

  std::string name() const override { return "replay"; }
  bool scripted() const override { return true; }

  Ball reply(const Ball& white, const BlackContext& ctx) override {
    if (next_ >= centers_.size()) throw Error(ErrorCode::ScriptIllegal, "replay script ran out of moves");
    return {centers_[next_++], white.radius * ctx.params->beta};
  }

 private:
  std::vector<AlgVector> centers_;
  std::size_t next_ = 0;
};

}  // namespace jarnik
