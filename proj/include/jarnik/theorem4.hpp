#pragma once

// White's block strategy: each block of 2t rounds flees the nearest blocking catalog
// subspace and then the hull of the low-denominator rational points nearby.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "jarnik/game.hpp"

namespace jarnik {

inline std::string decimal_view(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline nlohmann::json optional_spec_json(const std::optional<AffineSubspaceSpec>& s) {
  return s ? s->to_json() : nlohmann::json(nullptr);
}

inline std::optional<AffineSubspaceSpec> optional_spec_from_json(const nlohmann::json& j, const FieldPtr& f) {
  if (j.is_null()) return std::nullopt;
  return AffineSubspaceSpec::from_json(j, f);
}

struct Move {
  Side side = Side::Black;
  Ball ball;
};

/// One escape phase of t rounds away from a target.
struct PhaseRecord {
  bool active = false;
  std::size_t start_round = 0;
  Rational start_radius;
  AlgVector piece;          // w of the linear functional used
  bool full_rate = false;
  AlgebraicNumber start_value;
  AlgebraicNumber achieved;  // exact distance from the ball ending the phase to the target
  Rational guaranteed;       // gamma * start_radius / 2
  bool ok = true;

  nlohmann::json to_json() const {
    nlohmann::json j = {{"active", active}, {"start_round", start_round}, {"start_radius", format_rational(start_radius)}};
    if (active) {
      j["piece"] = jarnik::to_json(piece);
      j["full_rate"] = full_rate;
      j["start_value"] = start_value.to_json();
      j["achieved"] = achieved.to_json();
      j["achieved_decimal"] = achieved.to_decimal(20);
      j["guaranteed"] = format_rational(guaranteed);
      j["ok"] = ok;
    }
    return j;
  }

  static PhaseRecord from_json(const nlohmann::json& j, const FieldPtr& f) {
    PhaseRecord p;
    p.active = j.at("active").get<bool>();
    p.start_round = j.at("start_round").get<std::size_t>();
    p.start_radius = parse_rational(j.at("start_radius").get<std::string>());
    if (p.active) {
      p.piece = alg_vector_from_json(j.at("piece"), f);
      p.full_rate = j.at("full_rate").get<bool>();
      p.start_value = AlgebraicNumber::from_json(j.at("start_value"), f);
      p.achieved = AlgebraicNumber::from_json(j.at("achieved"), f);
      p.guaranteed = parse_rational(j.at("guaranteed").get<std::string>());
      p.ok = j.at("ok").get<bool>();
    }
    return p;
  }
};

struct BlockRecord {
  std::size_t r = 0;
  std::size_t j_start = 0;  // j_{r-1} = 2t(r-1)
  Ball start;               // B_{j_{r-1}}
  Rational enlarged_radius;
  std::optional<std::size_t> m;  // first catalog index meeting the enlarged box
  std::size_t k = 0;
  bool horizon_limited = false;
  Rational catalog_bound;
  Rational det_sq_used;     // d_{nu_{k_r}}^2 (1 when k_r = 0)
  Rational det_sq_printed;  // d_{nu_{k_{r-1}}}^2, the printed subscript
  unsigned r_exponent = 0;  // 2(a+1)
  Rational r_pow;           // R_r^(2(a+1)) with det_sq_used
  Rational r_pow_printed;   // same with det_sq_printed
  std::optional<AffineSubspaceSpec> V;
  std::string v_note;
  std::optional<AffineSubspaceSpec> V_prime;
  std::size_t rational_points = 0;
  int hull_dim = -1;
  bool lemma2_ok = true;
  PhaseRecord phase1, phase2;
  Ball end;  // B_{j_r}
  std::optional<AlgebraicNumber> dist_v_end;
  std::optional<AlgebraicNumber> dist_vprime_end;

  double R() const { return std::pow(r_pow.get_d(), 1.0 / r_exponent); }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["r"] = r;
    j["j_start"] = j_start;
    j["start"] = start.to_json();
    j["enlarged_radius"] = format_rational(enlarged_radius);
    j["m"] = m ? nlohmann::json(*m) : nlohmann::json(nullptr);
    j["k"] = k;
    j["horizon_limited"] = horizon_limited;
    j["catalog_det_sq_bound"] = format_rational(catalog_bound);
    j["det_sq_used"] = format_rational(det_sq_used);
    j["det_sq_printed_reading"] = format_rational(det_sq_printed);
    j["R_exponent"] = r_exponent;
    j["R_pow"] = format_rational(r_pow);
    j["R_pow_printed_reading"] = format_rational(r_pow_printed);
    j["R_decimal"] = decimal_view(R());
    j["V"] = optional_spec_json(V);
    j["V_note"] = v_note;
    j["V_prime"] = optional_spec_json(V_prime);
    j["rational_points"] = rational_points;
    j["hull_dim"] = hull_dim;
    j["lemma2_ok"] = lemma2_ok;
    j["phase1"] = phase1.to_json();
    j["phase2"] = phase2.to_json();
    j["end"] = end.to_json();
    j["dist_V_end"] = dist_v_end ? dist_v_end->to_json() : nlohmann::json(nullptr);
    j["dist_V_prime_end"] = dist_vprime_end ? dist_vprime_end->to_json() : nlohmann::json(nullptr);
    return j;
  }

  static BlockRecord from_json(const nlohmann::json& j, const FieldPtr& f) {
    BlockRecord b;
    b.r = j.at("r").get<std::size_t>();
    b.j_start = j.at("j_start").get<std::size_t>();
    b.start = Ball::from_json(j.at("start"), f);
    b.enlarged_radius = parse_rational(j.at("enlarged_radius").get<std::string>());
    if (!j.at("m").is_null()) b.m = j.at("m").get<std::size_t>();
    b.k = j.at("k").get<std::size_t>();
    b.horizon_limited = j.at("horizon_limited").get<bool>();
    b.catalog_bound = parse_rational(j.at("catalog_det_sq_bound").get<std::string>());
    b.det_sq_used = parse_rational(j.at("det_sq_used").get<std::string>());
    b.det_sq_printed = parse_rational(j.at("det_sq_printed_reading").get<std::string>());
    b.r_exponent = j.at("R_exponent").get<unsigned>();
    b.r_pow = parse_rational(j.at("R_pow").get<std::string>());
    b.r_pow_printed = parse_rational(j.at("R_pow_printed_reading").get<std::string>());
    b.V = optional_spec_from_json(j.at("V"), f);
    b.v_note = j.at("V_note").get<std::string>();
    b.V_prime = optional_spec_from_json(j.at("V_prime"), f);
    b.rational_points = j.at("rational_points").get<std::size_t>();
    b.hull_dim = j.at("hull_dim").get<int>();
    b.lemma2_ok = j.at("lemma2_ok").get<bool>();
    b.phase1 = PhaseRecord::from_json(j.at("phase1"), f);
    b.phase2 = PhaseRecord::from_json(j.at("phase2"), f);
    b.end = Ball::from_json(j.at("end"), f);
    if (!j.at("dist_V_end").is_null()) b.dist_v_end = AlgebraicNumber::from_json(j.at("dist_V_end"), f);
    if (!j.at("dist_V_prime_end").is_null())
      b.dist_vprime_end = AlgebraicNumber::from_json(j.at("dist_V_prime_end"), f);
    return b;
  }
};

/// Per-round record of the baseline strategy: the rational point fled from, if any.
struct OmegaRound {
  std::size_t round = 0;
  std::optional<RationalPoint> target;
  AlgebraicNumber dist_after;  // distance from the next Black ball to the target

  nlohmann::json to_json() const {
    nlohmann::json j = {{"round", round}};
    if (target) {
      j["q"] = target->q;
      j["b"] = target->b;
      j["dist_after"] = dist_after.to_json();
    } else {
      j["q"] = nullptr;
    }
    return j;
  }
};

enum class WhiteKind { Theorem4, Omega, Centered };

inline std::string white_name(WhiteKind w) {
  switch (w) {
    case WhiteKind::Theorem4: return "theorem4";
    case WhiteKind::Omega: return "omega";
    case WhiteKind::Centered: return "centered";
  }
  return "?";
}

inline WhiteKind parse_white(const std::string& s) {
  if (s == "theorem4") return WhiteKind::Theorem4;
  if (s == "omega") return WhiteKind::Omega;
  if (s == "centered") return WhiteKind::Centered;
  throw Error(ErrorCode::InvalidArgument, "unknown white strategy " + s);
}

struct GameTranscript {
  GameParams params;
  FieldPtr field;
  AffineSubspaceSpec arena;
  std::string white;
  std::string black;
  Ball initial;
  std::vector<Move> moves;
  std::vector<BlockRecord> blocks;
  std::vector<OmegaRound> omega_rounds;
  Rational omega2_pow;  // omega_2^(2a), explicit constant of the growth estimate
  bool all_guarantees_ok = true;

  const Ball& final_ball() const { return moves.empty() ? initial : moves.back().ball; }

  std::vector<AlgVector> black_centers() const {
    std::vector<AlgVector> out;
    for (const auto& m : moves)
      if (m.side == Side::Black) out.push_back(m.ball.center);
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["params"] = params.to_json();
    j["field"] = field ? field->to_json() : nlohmann::json(nullptr);
    j["arena"] = arena.to_json();
    j["white"] = white;
    j["black"] = black;
    j["initial"] = initial.to_json();
    nlohmann::json mv = nlohmann::json::array();
    for (const auto& m : moves) {
      nlohmann::json e = m.ball.to_json();
      e["side"] = side_name(m.side);
      mv.push_back(e);
    }
    j["moves"] = mv;
    nlohmann::json bl = nlohmann::json::array();
    for (const auto& b : blocks) bl.push_back(b.to_json());
    j["blocks"] = bl;
    nlohmann::json om = nlohmann::json::array();
    for (const auto& o : omega_rounds) om.push_back(o.to_json());
    j["omega_rounds"] = om;
    j["omega2_pow"] = format_rational(omega2_pow);
    j["omega2_exponent"] = 2 * arena.dim();
    j["all_guarantees_ok"] = all_guarantees_ok;
    Ball fin = final_ball();
    j["final"] = fin.to_json();
    return j;
  }

  static GameTranscript from_json(const nlohmann::json& j) {
    GameTranscript t;
    t.params = GameParams::from_json(j.at("params"));
    t.field = j.at("field").is_null() ? nullptr : FieldContext::from_json(j.at("field"));
    t.arena = AffineSubspaceSpec::from_json(j.at("arena"), t.field);
    t.white = j.at("white").get<std::string>();
    t.black = j.at("black").get<std::string>();
    t.initial = Ball::from_json(j.at("initial"), t.field);
    for (const auto& m : j.at("moves")) {
      Move mv;
      mv.side = m.at("side").get<std::string>() == "white" ? Side::White : Side::Black;
      mv.ball = Ball::from_json(m, t.field);
      t.moves.push_back(std::move(mv));
    }
    for (const auto& b : j.at("blocks")) t.blocks.push_back(BlockRecord::from_json(b, t.field));
    t.omega2_pow = parse_rational(j.at("omega2_pow").get<std::string>());
    t.all_guarantees_ok = j.at("all_guarantees_ok").get<bool>();
    return t;
  }
};

struct PlayOptions {
  WhiteKind white = WhiteKind::Theorem4;
  Rational det_sq_bound{16};
  Rational det_sq_max{1024};
  bool skip_unblocked = true;  // otherwise CatalogExhausted when nothing in the catalog blocks
  CatalogOptions catalog;
};

/// omega_2^(2a) from inverting the definition of R_{r-1}: for q >= R_{r-1} the corrected linear
/// bound becomes max ||q xi_i|| >= omega_2 q^(-1/a) d_{nu_{k_{r-2}}}^(1/a).
inline Rational omega2_pow(const GameParams& p, unsigned a, unsigned d) {
  Rational sigma_sq = lemma2_sigma_w_sq(d, a, p.W);
  Rational lead = p.gamma() * p.rho0 / 2;
  return pow_q(lead, 2 * a) * pow_q(p.ab(), 6 * p.t * a) * sigma_sq / pow_q(2 * p.rho0, 2 * a);
}

/// R_r^(2(a+1)) = Sigma_W^2 (2 rho0)^(-2a) (alpha beta)^(-4at(r-1)) det^2.
inline Rational block_r_pow(const GameParams& p, unsigned a, unsigned d, std::size_t r, const Rational& det_sq) {
  Rational s = lemma2_sigma_w_sq(d, a, p.W) / pow_q(2 * p.rho0, 2 * a);
  return s * det_sq / pow_q(p.ab(), static_cast<unsigned>(4 * a * p.t * (r - 1)));
}

class GameEngine {
 public:
  GameEngine(GameParams params, Arena arena, BlackStrategy& black, PlayOptions opts, SubspaceCatalog* catalog)
      : params_(std::move(params)), arena_(std::move(arena)), black_(black), opts_(std::move(opts)), catalog_(catalog) {}

  GameTranscript play(const Ball& b0, std::size_t blocks) {
    params_.validate();
    std::size_t d = arena_.ambient_dim(), a = arena_.dim();
    if (!arena_.contains(b0.center)) throw Error(ErrorCode::PointNotOnSubspace, "B0 center is not on the arena");
    if (b0.radius != params_.rho0) throw Error(ErrorCode::ConfigInvalid, "B0 radius must equal rho0");
    if (sup_norm(b0.center) + AlgebraicNumber(b0.radius) > AlgebraicNumber(params_.W))
      throw Error(ErrorCode::ConfigInvalid, "B0 does not fit in the W box");
    tr_ = GameTranscript{};
    tr_.params = params_;
    tr_.arena = arena_.spec();
    tr_.field = arena_.spec().field();
    if (!tr_.field) tr_.field = b0.center.empty() ? nullptr : b0.center.front().field();
    tr_.white = white_name(opts_.white);
    tr_.black = black_.name();
    tr_.initial = b0;
    tr_.omega2_pow = omega2_pow(params_, static_cast<unsigned>(a), static_cast<unsigned>(d));
    current_ = b0;
    round_ = 0;
    if (opts_.white == WhiteKind::Theorem4) {
      if (!theorem4_applicable(arena_.spec()))
        throw Error(ErrorCode::ArenaNotApplicable, "rank of Gamma(A) must be below dim A");
      if (!catalog_) throw Error(ErrorCode::InvalidArgument, "the block strategy needs a catalog");
      for (std::size_t r = 1; r <= blocks; ++r) run_block(r);
    } else {
      for (std::size_t i = 0; i < 2 * params_.t * blocks; ++i) {
        if (opts_.white == WhiteKind::Omega) {
          omega_round();
        } else {
          play_round(nullptr);
        }
      }
    }
    return tr_;
  }

 private:
  /// One White move (by the piece, or centered) followed by Black's reply.
  void play_round(const EscapePiece* piece) {
    Rational wr = current_.radius * params_.alpha;
    AlgVector wc = current_.center;
    if (piece) wc = Arena::displace(current_.center, arena_.unit_steps()[piece->best_step], current_.radius - wr);
    Ball white{std::move(wc), wr};
    if (!legal_move(current_, white, Side::White, params_, arena_))
      throw Error(ErrorCode::InvalidArgument, "internal error: illegal White move");
    tr_.moves.push_back({Side::White, white});
    BlackContext ctx{&params_, &arena_, catalog_, piece, round_};
    Ball reply = black_.reply(white, ctx);
    if (!legal_move(white, reply, Side::Black, params_, arena_)) {
      throw Error(black_.scripted() ? ErrorCode::ScriptIllegal : ErrorCode::IllegalBlackReply,
                  "illegal Black reply in round " + std::to_string(round_));
    }
    tr_.moves.push_back({Side::Black, reply});
    current_ = std::move(reply);
    ++round_;
  }

  PhaseRecord run_phase(const std::optional<AffineSubspaceSpec>& target) {
    PhaseRecord ph;
    ph.start_round = round_;
    ph.start_radius = current_.radius;
    if (!target) {
      for (unsigned i = 0; i < params_.t; ++i) play_round(nullptr);
      return ph;
    }
    EscapeTarget et(*target);
    EscapePiece piece = choose_piece(et, current_.center, arena_);
    ph.active = true;
    ph.piece = piece.w;
    ph.full_rate = piece.full_rate;
    ph.start_value = piece.value;
    for (unsigned i = 0; i < params_.t; ++i) play_round(&piece);
    ph.achieved = ball_distance(arena_, current_, *target);
    ph.guaranteed = params_.gamma() * ph.start_radius / 2;
    ph.ok = !ph.full_rate || ph.achieved >= AlgebraicNumber(ph.guaranteed);
    if (!ph.ok) tr_.all_guarantees_ok = false;
    return ph;
  }

  BlockedIndex blocked_with_extension(const AlgVector& center, const AlgebraicNumber& radius) {
    while (true) {
      BlockedIndex bi = catalog_->empty() ? BlockedIndex{std::nullopt, 0, true}
                                          : first_blocked_index(center, radius, *catalog_);
      if (!bi.horizon_limited || catalog_->det_sq_bound() >= opts_.det_sq_max) {
        if (bi.horizon_limited && !opts_.skip_unblocked) {
          throw Error(ErrorCode::CatalogExhausted,
                      "no catalog entry up to det_sq " + format_rational(catalog_->det_sq_bound()) +
                          " meets the box; raise det_sq_max above " + format_rational(opts_.det_sq_max));
        }
        return bi;
      }
      Rational next = std::min<Rational>(catalog_->det_sq_bound() * 2, opts_.det_sq_max);
      *catalog_ = enumerate_catalog(catalog_->ambient_dim(), catalog_->dim(), next, opts_.catalog);
    }
  }

  void run_block(std::size_t r) {
    auto d = static_cast<unsigned>(arena_.ambient_dim());
    auto a = static_cast<unsigned>(arena_.dim());
    BlockRecord b;
    b.r = r;
    b.j_start = round_;
    b.start = current_;
    b.enlarged_radius = current_.radius * 2;
    AlgebraicNumber enlarged(b.enlarged_radius);
    BlockedIndex bi = blocked_with_extension(current_.center, enlarged);
    b.m = bi.m;
    b.k = bi.k;
    b.horizon_limited = bi.horizon_limited;
    b.catalog_bound = catalog_->det_sq_bound();
    b.det_sq_used = b.k ? catalog_->det_sq_of_group(b.k) : Rational(1);
    b.det_sq_printed = prev_k_ ? catalog_->det_sq_of_group(prev_k_) : Rational(1);
    b.r_exponent = 2 * (a + 1);
    b.r_pow = block_r_pow(params_, a, d, r, b.det_sq_used);
    b.r_pow_printed = block_r_pow(params_, a, d, r, b.det_sq_printed);
    prev_k_ = b.k;

    if (b.m) {
      auto cut = intersect(arena_.spec(), catalog_->at(*b.m).affine_part());
      if (cut) {
        b.V = std::move(cut);
        b.v_note = "A cap V_m";
      } else {
        b.v_note = "A misses V_m";
      }
    } else {
      b.v_note = "no catalog entry meets the enlarged box";
    }

    auto pts = rational_points_in_box(current_.center, enlarged, b.r_exponent, AlgebraicNumber(b.r_pow), true);
    b.rational_points = pts.size();
    AffineHull hull = affine_hull(pts);
    b.hull_dim = hull.dim;
    b.lemma2_ok = hull.dim <= static_cast<int>(a) - 1;
    if (!b.lemma2_ok) tr_.all_guarantees_ok = false;
    if (hull.dim >= 0 && b.lemma2_ok) b.V_prime = hull.spec;

    b.phase1 = run_phase(b.V);
    b.phase2 = run_phase(b.V_prime);
    b.end = current_;
    if (b.V) b.dist_v_end = ball_distance(arena_, current_, *b.V);
    if (b.V_prime) b.dist_vprime_end = ball_distance(arena_, current_, *b.V_prime);
    tr_.blocks.push_back(std::move(b));
  }

  /// Flee the nearest rational point with q up to the Dirichlet scale (sigma rho^-a)^(1/(a+1)).
  void omega_round() {
    auto d = static_cast<unsigned>(arena_.ambient_dim());
    auto a = static_cast<unsigned>(arena_.dim());
    AlgebraicNumber rho(current_.radius);
    Lemma2Constants c = lemma2_constants(d, a, current_.center, rho, Rational(1));
    AlgebraicNumber reach(current_.radius * 2);
    auto pts = rational_points_in_box(current_.center, reach, c.t_exponent, c.t_pow);
    OmegaRound rec;
    rec.round = round_;
    std::optional<AlgebraicNumber> best_d;
    for (const auto& p : pts) {
      AlgebraicNumber dd = supnorm_distance(SupnormSet::point(current_.center), SupnormSet::point(p.as_vector()));
      if (!best_d || dd < *best_d) {
        best_d = dd;
        rec.target = p;
      }
    }
    if (!rec.target) {
      play_round(nullptr);
    } else {
      AffineSubspaceSpec pt = AffineSubspaceSpec::point(rec.target->as_vector());
      EscapeTarget et(pt);
      EscapePiece piece = choose_piece(et, current_.center, arena_);
      play_round(&piece);
      rec.dist_after = ball_distance(arena_, current_, pt);
    }
    tr_.omega_rounds.push_back(std::move(rec));
  }

  GameParams params_;
  Arena arena_;
  BlackStrategy& black_;
  PlayOptions opts_;
  SubspaceCatalog* catalog_;
  GameTranscript tr_;
  Ball current_;
  std::size_t round_ = 0;
  std::size_t prev_k_ = 0;
};

inline GameTranscript play(const GameParams& params, const Arena& arena, BlackStrategy& black, const Ball& b0,
                           std::size_t blocks, const PlayOptions& opts, SubspaceCatalog* catalog) {
  GameEngine engine(params, arena, black, opts, catalog);
  return engine.play(b0, blocks);
}

/// Escapes from V for t rounds starting at the Black ball B_j; returns the final ball and the record.
inline std::pair<Ball, PhaseRecord> escape_halfspace(const GameParams& params, const Arena& arena, const Ball& bj,
                                                     const AffineSubspaceSpec& V, BlackStrategy& black) {
  EscapeTarget et(V);
  EscapePiece piece = choose_piece(et, bj.center, arena);
  PhaseRecord ph;
  ph.active = true;
  ph.start_radius = bj.radius;
  ph.piece = piece.w;
  ph.full_rate = piece.full_rate;
  ph.start_value = piece.value;
  Ball cur = bj;
  for (unsigned i = 0; i < params.t; ++i) {
    Rational wr = cur.radius * params.alpha;
    Ball white{Arena::displace(cur.center, arena.unit_steps()[piece.best_step], cur.radius - wr), wr};
    BlackContext ctx{&params, &arena, nullptr, &piece, i};
    Ball reply = black.reply(white, ctx);
    if (!legal_move(white, reply, Side::Black, params, arena))
      throw Error(black.scripted() ? ErrorCode::ScriptIllegal : ErrorCode::IllegalBlackReply, "illegal Black reply");
    cur = std::move(reply);
  }
  ph.achieved = ball_distance(arena, cur, V);
  ph.guaranteed = params.gamma() * bj.radius / 2;
  ph.ok = !ph.full_rate || ph.achieved >= AlgebraicNumber(ph.guaranteed);
  return {cur, ph};
}

struct EscapeTwoResult {
  Ball end;
  PhaseRecord first, second;
};

inline EscapeTwoResult escape_two(const GameParams& params, const Arena& arena, const Ball& bj,
                                  const std::optional<AffineSubspaceSpec>& V,
                                  const std::optional<AffineSubspaceSpec>& V_prime, BlackStrategy& black) {
  EscapeTwoResult out;
  Ball cur = bj;
  auto phase = [&](const std::optional<AffineSubspaceSpec>& target, PhaseRecord& rec) {
    if (target) {
      auto [next, ph] = escape_halfspace(params, arena, cur, *target, black);
      cur = next;
      rec = ph;
      return;
    }
    rec.start_radius = cur.radius;
    for (unsigned i = 0; i < params.t; ++i) {
      Ball white{cur.center, cur.radius * params.alpha};
      BlackContext ctx{&params, &arena, nullptr, nullptr, i};
      Ball reply = black.reply(white, ctx);
      if (!legal_move(white, reply, Side::Black, params, arena))
        throw Error(black.scripted() ? ErrorCode::ScriptIllegal : ErrorCode::IllegalBlackReply, "illegal Black reply");
      cur = std::move(reply);
    }
  };
  phase(V, out.first);
  phase(V_prime, out.second);
  out.end = cur;
  return out;
}

struct CertifiedBound {
  std::size_t r = 0;
  Rational r_pow;
  unsigned r_exponent = 0;
  std::uint64_t q_limit = 0;      // largest q < R_r
  Rational fle_printed;           // (gamma rho0 / 2)(alpha beta)^((2t-1) r)
  Rational fle_corrected;         // (gamma rho0 / 2)(alpha beta)^((2r-1) t)
  AlgebraicNumber distance_coeff;  // min(rho_{j_{r-1}}, dist(B_{j_r}, V_r'))
  std::string distance_source;    // "radius" or "V_prime"
  bool valid = true;              // false when the V_r' escape was not guaranteed
};

inline CertifiedBound certified_bound(const GameTranscript& tr, std::size_t r) {
  if (r < 1 || r > tr.blocks.size())
    throw Error(ErrorCode::BlockIncomplete, "block " + std::to_string(r) + " has not been completed");
  const BlockRecord& b = tr.blocks[r - 1];
  const GameParams& p = tr.params;
  CertifiedBound c;
  c.r = r;
  c.r_pow = b.r_pow;
  c.r_exponent = b.r_exponent;
  c.q_limit = max_q_below(b.r_pow, b.r_exponent);
  Rational lead = p.gamma() * p.rho0 / 2;
  c.fle_printed = lead * pow_q(p.ab(), static_cast<unsigned>((2 * p.t - 1) * r));
  c.fle_corrected = lead * pow_q(p.ab(), static_cast<unsigned>((2 * r - 1) * p.t));
  AlgebraicNumber rho_prev(b.start.radius);
  if (b.V_prime && b.dist_vprime_end) {
    c.distance_coeff = min(rho_prev, *b.dist_vprime_end);
    c.distance_source = c.distance_coeff < rho_prev ? "V_prime" : "radius";
  } else {
    c.distance_coeff = rho_prev;
    c.distance_source = "radius";
  }
  c.valid = b.lemma2_ok && (!b.phase2.active || b.phase2.full_rate);
  return c;
}

inline Ball extract_point(const GameTranscript& tr) { return tr.final_ball(); }

}  // namespace jarnik
