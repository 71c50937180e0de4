#include "support.hpp"

using namespace jt;

namespace {

GameParams half_params() {
  GameParams p;
  p.alpha = rq(1, 2);
  p.beta = rq(1, 2);
  p.t = 2;
  p.rho0 = 1;
  p.W = 2;
  return p;
}

Arena real_line() { return Arena(AffineSubspaceSpec::from_columns({q(0)}, {{q(1)}})); }

Arena plane() { return Arena(AffineSubspaceSpec::from_columns({q(0), q(0)}, {{q(1), q(0)}, {q(0), q(1)}})); }

// Moves with White instead of against it.
class MirrorBlack : public BlackStrategy {
 public:
  std::string name() const override { return "mirror"; }
  Ball reply(const Ball& white, const BlackContext& ctx) override {
    Rational next = white.radius * ctx.params->beta;
    if (!ctx.threat) return {white.center, next};
    return {Arena::displace(white.center, ctx.arena->unit_steps()[ctx.threat->best_step], white.radius - next), next};
  }
};

class OversizedBlack : public BlackStrategy {
 public:
  std::string name() const override { return "oversized"; }
  Ball reply(const Ball& white, const BlackContext&) override { return {white.center, white.radius}; }
};

struct Flagship {
  FieldPtr f = cube_root_two();
  Arena arena{cubic_line(f)};
  GameParams params;
  Ball b0;
  Flagship() {
    params = half_params();
    params.W = 3;
    Alg t = th(f);
    b0 = {{q(0), t * t}, Rational(1)};
  }
  GameTranscript run(BlackStrategy& black, std::size_t blocks, Rational bound = 16) {
    auto cat = enumerate_catalog(2, 1, bound);
    PlayOptions opts;
    opts.det_sq_bound = bound;
    opts.det_sq_max = 256;
    return play(params, arena, black, b0, blocks, opts, &cat);
  }
};

}  // namespace

TEST(Params, MinimalTAndValidation) {
  EXPECT_EQ(GameParams::minimal_t(rq(1, 2), rq(1, 2)), 2u);
  EXPECT_EQ(GameParams::minimal_t(rq(1, 5), rq(1, 5)), 1u);
  EXPECT_CODE(GameParams::minimal_t(rq(3, 4), rq(1, 2)), ConfigInvalid);
  GameParams p = half_params();
  p.t = 1;
  EXPECT_CODE(p.validate(), ConfigInvalid);
  auto j = half_params().to_json();
  j.erase("t");
  EXPECT_EQ(GameParams::from_json(j).t, 2u);
  EXPECT_EQ(half_params().gamma(), rq(1, 4));
}

TEST(Params, GridGuaranteeHoldsForMinimalT) {
  for (long a : {2, 3, 4, 5})
    for (long b : {2, 3, 4, 5}) {
      Rational al = rq(1, a), be = rq(1, b);
      Rational g = 1 + al * be - 2 * al;
      if (g <= 0) continue;
      unsigned t = GameParams::minimal_t(al, be);
      EXPECT_LT(pow_q(al * be, t), g / 2);
      if (t > 1) EXPECT_GE(pow_q(al * be, t - 1), g / 2);
    }
}

TEST(LegalMove, Examples) {
  Arena A = real_line();
  GameParams p = half_params();
  Ball prev{{q(0)}, Rational(1)};
  EXPECT_TRUE(legal_move(prev, {{q(1, 2)}, rq(1, 2)}, Side::White, p, A));
  EXPECT_FALSE(legal_move(prev, {{q(1, 2) + q(1, 1000)}, rq(1, 2)}, Side::White, p, A));
  EXPECT_FALSE(legal_move(prev, {{q(0)}, rq(1, 3)}, Side::White, p, A));
  Arena L = Arena(cubic_line(cube_root_two()));
  EXPECT_FALSE(legal_move({{q(0), q(0)}, Rational(1)}, {{q(0), q(0)}, rq(1, 2)}, Side::White, p, L));
}

TEST(Arena, UnitStepsOfCubicLine) {
  auto f = cube_root_two();
  Arena A(cubic_line(f));
  ASSERT_EQ(A.unit_steps().size(), 2u);
  for (const auto& s : A.unit_steps()) EXPECT_EQ(sup_norm(s), q(1));
  EXPECT_EQ(plane().unit_steps().size(), 4u);
}

TEST(Escape, MinimaxOnTheLine) {
  GameParams p = half_params();
  GreedyBlack black;
  auto [end, ph] = escape_halfspace(p, real_line(), {{q(0)}, Rational(1)}, AffineSubspaceSpec::point({q(0)}), black);
  EXPECT_TRUE(ph.full_rate);
  EXPECT_EQ(ph.guaranteed, rq(1, 8));
  // White gains (1 - alpha) rho, Black takes back (1 - beta) alpha rho: net gamma rho per round
  EXPECT_EQ(ph.achieved, q(1, 4));
  EXPECT_EQ(end.radius, rq(1, 16));
  EXPECT_TRUE(ph.ok);
}

TEST(Escape, CooperatingBlackDoesBetter) {
  GameParams p = half_params();
  MirrorBlack black;
  auto [end, ph] = escape_halfspace(p, real_line(), {{q(0)}, Rational(1)}, AffineSubspaceSpec::point({q(0)}), black);
  EXPECT_GT(ph.achieved, Alg(ph.guaranteed));
  EXPECT_GT(ph.achieved, q(1, 4));
}

TEST(Escape, TargetOutOfReach) {
  GameParams p = half_params();
  GreedyBlack black;
  Ball b{{q(0)}, Rational(1)};
  auto V = AffineSubspaceSpec::point({q(7)});
  auto [end, ph] = escape_halfspace(p, real_line(), b, V, black);
  EXPECT_TRUE(ph.ok);
  EXPECT_GE(ph.achieved, q(5));
}

TEST(Escape, GridAgainstGreedyAndRandom) {
  for (long a : {2, 3, 4, 5})
    for (long bb : {2, 3, 4, 5}) {
      GameParams p;
      p.alpha = rq(1, a);
      p.beta = rq(1, bb);
      if (p.gamma() <= 0) continue;
      p.t = GameParams::minimal_t(p.alpha, p.beta);
      p.W = 2;
      GreedyBlack g;
      auto [e1, greedy] = escape_halfspace(p, real_line(), {{q(0)}, Rational(1)}, AffineSubspaceSpec::point({q(0)}), g);
      EXPECT_TRUE(greedy.ok) << a << " " << bb;
      EXPECT_GE(greedy.achieved, Alg(p.gamma() / 2));
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        RandomBlack rb(seed);
        auto [e2, rnd] = escape_halfspace(p, real_line(), {{q(0)}, Rational(1)}, AffineSubspaceSpec::point({q(0)}), rb);
        EXPECT_TRUE(rnd.ok);
      }
    }
}

TEST(Escape, LineInThePlane) {
  GameParams p = half_params();
  auto V = rational_line(1, 1, 0);
  for (std::uint64_t seed : {4u, 5u, 6u}) {
    RandomBlack black(seed);
    auto [end, ph] = escape_halfspace(p, plane(), {{q(1, 3), q(1, 5)}, Rational(1)}, V, black);
    EXPECT_TRUE(ph.full_rate);
    EXPECT_TRUE(ph.ok);
    EXPECT_GE(ph.achieved, Alg(ph.guaranteed));
  }
}

TEST(EscapeTwo, NoTargets) {
  GameParams p = half_params();
  GreedyBlack black;
  auto r = escape_two(p, real_line(), {{q(0)}, Rational(1)}, std::nullopt, std::nullopt, black);
  EXPECT_EQ(r.end.radius, rq(1, 256));
  EXPECT_FALSE(r.first.active);
  EXPECT_FALSE(r.second.active);
}

TEST(EscapeTwo, LineThenPoint) {
  GameParams p = half_params();
  GreedyBlack black;
  auto V = rational_line(1, 1, 0);
  auto Vp = AffineSubspaceSpec::point({q(1, 2), q(1, 3)});
  auto r = escape_two(p, plane(), {{q(1, 2), q(1, 3)}, Rational(1)}, V, Vp, black);
  EXPECT_GE(r.first.achieved, Alg(p.gamma() / 2));
  EXPECT_EQ(r.second.start_radius, rq(1, 16));
  EXPECT_GE(r.second.achieved, Alg(p.gamma() * rq(1, 16) / 2));
  EXPECT_EQ(r.second.guaranteed, rq(1, 128));
  EXPECT_TRUE(r.first.ok && r.second.ok);
}

TEST(Blocks, RadiusConstantForFirstBlock) {
  GameParams p = half_params();
  p.W = 1;
  EXPECT_EQ(block_r_pow(p, 1, 2, 1, Rational(1)), rq(1, 1152));
  EXPECT_NEAR(std::pow(1.0 / 1152, 0.25), 0.1716, 1e-4);
  // later blocks grow by (alpha beta)^(-4at) = 4^8 per block at fixed determinant
  EXPECT_EQ(block_r_pow(p, 1, 2, 2, Rational(1)) / block_r_pow(p, 1, 2, 1, Rational(1)), 65536);
}

TEST(Play, ZeroBlocks) {
  Flagship fl;
  GreedyBlack black;
  auto tr = fl.run(black, 0);
  EXPECT_TRUE(tr.moves.empty());
  EXPECT_TRUE(tr.blocks.empty());
  Ball e = extract_point(tr);
  EXPECT_EQ(e.center, fl.b0.center);
  EXPECT_EQ(e.radius, fl.b0.radius);
  EXPECT_CODE(certified_bound(tr, 1), BlockIncomplete);
}

TEST(Play, TwoBlocksOnCubicLine) {
  Flagship fl;
  GreedyBlack black;
  auto tr = fl.run(black, 2);
  ASSERT_EQ(tr.blocks.size(), 2u);
  EXPECT_TRUE(tr.all_guarantees_ok);
  EXPECT_EQ(tr.moves.size(), 2u * 2 * 2 * fl.params.t);
  std::size_t prev_k = 0;
  for (const auto& b : tr.blocks) {
    EXPECT_GE(b.k, prev_k);
    prev_k = b.k;
    EXPECT_EQ(b.start.radius, fl.params.black_radius(b.j_start));
    EXPECT_EQ(b.j_start, 2 * fl.params.t * (b.r - 1));
    EXPECT_TRUE(b.lemma2_ok);
    EXPECT_LE(b.hull_dim, 0);
  }
  for (const auto& m : tr.moves) EXPECT_TRUE(fl.arena.contains(m.ball.center));
  EXPECT_EQ(extract_point(tr).radius, fl.params.black_radius(8));
}

TEST(Play, ReplayReproducesTranscript) {
  Flagship fl;
  GreedyBlack black;
  auto tr = fl.run(black, 1);
  ReplayBlack replay(tr.black_centers());
  auto again = fl.run(replay, 1);
  EXPECT_EQ(again.moves.size(), tr.moves.size());
  for (std::size_t i = 0; i < tr.moves.size(); ++i) EXPECT_TRUE(identical(again.moves[i].ball.center, tr.moves[i].ball.center));
  auto a = tr.to_json(), b = again.to_json();
  a.erase("black");
  b.erase("black");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Play, RandomSeedsAreReproducible) {
  Flagship fl;
  RandomBlack r1(9), r2(9), r3(10);
  auto a = fl.run(r1, 1).to_json().dump();
  EXPECT_EQ(a, fl.run(r2, 1).to_json().dump());
  EXPECT_NE(a, fl.run(r3, 1).to_json().dump());
}

TEST(Play, IllegalRepliesRejected) {
  Flagship fl;
  OversizedBlack bad;
  EXPECT_CODE(fl.run(bad, 1), IllegalBlackReply);
  ReplayBlack wrong({{q(5), q(5)}});
  EXPECT_CODE(fl.run(wrong, 1), ScriptIllegal);
  ReplayBlack empty({});
  EXPECT_CODE(fl.run(empty, 1), ScriptIllegal);
}

TEST(Play, ArenaAndConfigChecks) {
  Flagship fl;
  GreedyBlack black;
  auto cat = enumerate_catalog(2, 1, Rational(4));
  Arena diag(rational_line(1, 1, 0));
  EXPECT_CODE(play(fl.params, diag, black, {{q(0), q(0)}, Rational(1)}, 1, {}, &cat), ArenaNotApplicable);
  GameParams bad = fl.params;
  bad.alpha = rq(3, 4);
  EXPECT_CODE(play(bad, fl.arena, black, fl.b0, 1, {}, &cat), ConfigInvalid);
  EXPECT_CODE(play(fl.params, fl.arena, black, {{q(0), q(0)}, Rational(1)}, 1, {}, &cat), PointNotOnSubspace);
}

TEST(Play, StrictCatalogThrowsWhenNothingBlocks) {
  Flagship fl;
  GreedyBlack black;
  auto cat = enumerate_catalog(2, 1, Rational(1));
  PlayOptions opts;
  opts.det_sq_bound = 1;
  opts.det_sq_max = 1;
  opts.skip_unblocked = false;
  EXPECT_CODE(play(fl.params, fl.arena, black, fl.b0, 3, opts, &cat), CatalogExhausted);
}

TEST(Play, OmegaWhiteOnTheLine) {
  auto f = cube_root_two();
  GameParams p = half_params();
  p.rho0 = rq(1, 4);
  GreedyBlack black;
  PlayOptions opts;
  opts.white = WhiteKind::Omega;
  auto tr = play(p, real_line(), black, {{th(f)}, rq(1, 4)}, 2, opts, nullptr);
  EXPECT_EQ(tr.omega_rounds.size(), 8u);
  EXPECT_EQ(tr.moves.size(), 16u);
}

TEST(Certificate, Coefficients) {
  GameTranscript tr;
  tr.params = half_params();
  BlockRecord b;
  b.r = 1;
  b.start = {{q(0)}, rq(1, 16)};
  b.r_pow = 16;
  b.r_exponent = 4;
  tr.blocks.push_back(b);
  auto c = certified_bound(tr, 1);
  EXPECT_EQ(c.fle_corrected, rq(1, 128));
  EXPECT_EQ(c.fle_printed, rq(1, 512));
  EXPECT_EQ(c.distance_coeff, q(1, 16));
  EXPECT_EQ(c.distance_source, "radius");
  EXPECT_EQ(c.q_limit, 1u);
  EXPECT_CODE(certified_bound(tr, 2), BlockIncomplete);
}

TEST(Transcript, JsonRoundTrip) {
  Flagship fl;
  GreedyBlack black;
  auto tr = fl.run(black, 2);
  auto j = tr.to_json();
  auto back = GameTranscript::from_json(j);
  EXPECT_EQ(back.to_json().dump(), j.dump());
  EXPECT_EQ(back.blocks.size(), 2u);
}
