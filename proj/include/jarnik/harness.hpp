#pragma once

// Run configuration, experiment orchestration and report output.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "jarnik/theorem4.hpp"

namespace jarnik {

struct RunConfig {
  std::string id = "run";
  FieldPtr field;
  AffineSubspaceSpec arena;
  GameParams params;
  AlgVector b0_center;
  Rational det_sq_bound{64};
  Rational det_sq_max{1024};
  bool skip_unblocked = true;
  WhiteKind white = WhiteKind::Theorem4;
  std::string black = "greedy";
  std::uint64_t seed = 1;
  std::vector<AlgVector> replay;  // Black centers for black = "replay"
  std::size_t blocks = 0;
  std::uint64_t quality_q_max = 10000;
  std::string output_dir;
  bool arena_applicable = false;
  nlohmann::json source;

  static RunConfig from_json(const nlohmann::json& j) {
    RunConfig c;
    c.source = j;
    try {
      c.id = j.value("id", std::string("run"));
      c.field = j.contains("field") && !j.at("field").is_null() ? FieldContext::from_json(j.at("field")) : nullptr;
      c.arena = AffineSubspaceSpec::from_json(j.at("arena"), c.field);
      const auto& g = j.at("game");
      c.params.alpha = parse_rational(g.at("alpha").get<std::string>());
      c.params.beta = parse_rational(g.at("beta").get<std::string>());
      if (1 + c.params.alpha * c.params.beta - 2 * c.params.alpha <= 0) {
        throw Error(ErrorCode::ConfigInvalid,
                    "gamma = " + format_rational(1 + c.params.alpha * c.params.beta - 2 * c.params.alpha) +
                        " is not positive");
      }
      c.params.t = g.contains("t") ? g.at("t").get<unsigned>() : GameParams::minimal_t(c.params.alpha, c.params.beta);
      c.params.rho0 = parse_rational(g.at("rho0").get<std::string>());
      c.params.W = parse_rational(g.at("W").get<std::string>());
      c.b0_center = alg_vector_from_json(g.at("b0_center"), c.field);
      if (j.contains("catalog")) {
        const auto& cat = j.at("catalog");
        if (cat.contains("det_sq_bound")) c.det_sq_bound = parse_rational(cat.at("det_sq_bound").get<std::string>());
        if (cat.contains("det_sq_max")) c.det_sq_max = parse_rational(cat.at("det_sq_max").get<std::string>());
        c.skip_unblocked = cat.value("skip_unblocked", true);
      }
      c.white = parse_white(j.value("white", std::string("theorem4")));
      if (j.contains("adversary")) {
        const auto& adv = j.at("adversary");
        c.black = adv.value("kind", std::string("greedy"));
        c.seed = adv.value("seed", std::uint64_t{1});
        if (adv.contains("script"))
          for (const auto& x : adv.at("script")) c.replay.push_back(alg_vector_from_json(x, c.field));
      }
      c.blocks = j.value("blocks", std::size_t{0});
      c.quality_q_max = j.value("quality_q_max", std::uint64_t{10000});
      if (j.contains("output")) c.output_dir = j.at("output").value("dir", std::string());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigInvalid) throw;
      throw Error(ErrorCode::ConfigInvalid, std::string(error_code_name(e.code())) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ConfigInvalid, e.what());
    }
    c.validate();
    return c;
  }

  static RunConfig from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot open " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ConfigInvalid, e.what());
    }
    return from_json(j);
  }

  void validate() {
    try {
      params.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigInvalid, e.what());
    }
    if (b0_center.size() != arena.ambient_dim()) throw Error(ErrorCode::ConfigInvalid, "b0_center has wrong length");
    if (!arena.contains(b0_center)) throw Error(ErrorCode::ConfigInvalid, "b0_center is not on the arena");
    if (sup_norm(b0_center) + AlgebraicNumber(params.rho0) > AlgebraicNumber(params.W))
      throw Error(ErrorCode::ConfigInvalid, "B0 does not fit in the W box");
    if (black != "greedy" && black != "random" && black != "replay")
      throw Error(ErrorCode::ConfigInvalid, "adversary must be greedy, random or replay");
    if (det_sq_bound < 1 || det_sq_max < det_sq_bound)
      throw Error(ErrorCode::ConfigInvalid, "need 1 <= det_sq_bound <= det_sq_max");
    arena_applicable = theorem4_applicable(arena);
    if (white == WhiteKind::Theorem4 && !arena_applicable)
      throw Error(ErrorCode::ConfigInvalid, "arena is not applicable: rank Gamma(A) >= dim A");
  }

  std::unique_ptr<BlackStrategy> make_black() const {
    if (black == "random") return std::make_unique<RandomBlack>(seed);
    if (black == "replay") return std::make_unique<ReplayBlack>(replay);
    return std::make_unique<GreedyBlack>();
  }
};

struct ReportRow {
  std::string experiment;
  std::string metric;
  std::string exact;
  std::string decimal;
  std::optional<bool> pass;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = "experiment,metric,exact,decimal,pass\n";
  for (const auto& r : rows) {
    out += csv_field(r.experiment) + "," + csv_field(r.metric) + "," + csv_field(r.exact) + "," +
           csv_field(r.decimal) + "," + (r.pass ? (*r.pass ? "pass" : "FAIL") : "") + "\n";
  }
  return out;
}

inline std::string alg_exact(const AlgebraicNumber& x) { return x.to_json().dump(); }

/// q, dist_1..dist_d, max_dist, normalized for q = 1..q_max.
inline std::string quality_csv(const AlgVector& xi, unsigned a, std::uint64_t q_max) {
  std::ostringstream out;
  out << "q";
  for (std::size_t i = 1; i <= xi.size(); ++i) out << ",dist_" << i;
  out << ",max_dist,normalized\n";
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    QualityRecord r = quality(xi, q, a);
    out << q;
    for (const auto& d : r.dists) out << "," << d.to_decimal(30);
    out << "," << r.max_dist.to_decimal(30) << "," << decimal_view(r.normalized) << "\n";
  }
  return out.str();
}

struct ExperimentResult {
  GameTranscript transcript;
  std::vector<ReportRow> rows;
  std::string transcript_json;
  std::string quality;
  std::string report;
  bool all_pass = true;
};

/// Lower bound on q * max ||q xi_i|| (a = 1) for q < R_last, from the block certificates.
inline std::optional<AlgebraicNumber> running_min_certificate(const GameTranscript& tr, std::uint64_t q_max) {
  std::optional<AlgebraicNumber> bound;
  std::uint64_t covered = 0;
  for (std::size_t r = 1; r <= tr.blocks.size() && covered < q_max; ++r) {
    CertifiedBound c = certified_bound(tr, r);
    std::uint64_t hi = std::min(c.q_limit, q_max);
    if (hi <= covered) continue;
    AlgebraicNumber q0(Integer(static_cast<unsigned long>(covered + 1)));
    AlgebraicNumber piece = c.distance_coeff * q0 * q0;
    if (!bound || piece < *bound) bound = piece;
    covered = hi;
  }
  if (covered < q_max) return std::nullopt;
  return bound;
}

inline ExperimentResult run_experiment(const RunConfig& cfg) {
  ExperimentResult res;
  Arena arena(cfg.arena);
  auto black = cfg.make_black();
  PlayOptions opts;
  opts.white = cfg.white;
  opts.det_sq_bound = cfg.det_sq_bound;
  opts.det_sq_max = cfg.det_sq_max;
  opts.skip_unblocked = cfg.skip_unblocked;
  SubspaceCatalog catalog;
  if (cfg.white == WhiteKind::Theorem4)
    catalog = enumerate_catalog(cfg.arena.ambient_dim(), cfg.arena.dim(), cfg.det_sq_bound, opts.catalog);
  Ball b0{cfg.b0_center, cfg.params.rho0};
  res.transcript = play(cfg.params, arena, *black, b0, cfg.blocks, opts, &catalog);
  const GameTranscript& tr = res.transcript;
  auto a = static_cast<unsigned>(cfg.arena.dim());
  auto row = [&](std::string metric, std::string exact, std::string dec, std::optional<bool> pass = std::nullopt) {
    if (pass && !*pass) res.all_pass = false;
    res.rows.push_back({cfg.id, std::move(metric), std::move(exact), std::move(dec), pass});
  };

  row("guarantees", tr.all_guarantees_ok ? "true" : "false", "", tr.all_guarantees_ok);
  std::size_t prev_k = 0;
  bool increased = false;
  for (const auto& b : tr.blocks) {
    std::string p = "block" + std::to_string(b.r) + ".";
    row(p + "k", std::to_string(b.k), "", b.k >= prev_k);
    increased = increased || b.k > prev_k;
    prev_k = b.k;
    row(p + "det_sq", format_rational(b.det_sq_used), decimal_view(b.det_sq_used.get_d()));
    row(p + "R_pow" + std::to_string(b.r_exponent), format_rational(b.r_pow), decimal_view(b.R()));
    row(p + "hull_dim", std::to_string(b.hull_dim), "", b.lemma2_ok);
    for (const PhaseRecord* ph : {&b.phase1, &b.phase2}) {
      if (!ph->active) continue;
      std::string name = p + (ph == &b.phase1 ? "escape_V" : "escape_V_prime");
      row(name, alg_exact(ph->achieved), ph->achieved.to_decimal(20), ph->full_rate ? std::optional<bool>(ph->ok) : std::nullopt);
    }
    CertifiedBound c = certified_bound(tr, b.r);
    auto scan = scan_linear_lower_bound(b.end.center, c.distance_coeff, c.q_limit);
    row(p + "certificate_distance", alg_exact(c.distance_coeff), c.distance_coeff.to_decimal(20),
        c.valid && !scan.first_failure);
    auto scan2 = scan_linear_lower_bound(b.end.center, AlgebraicNumber(c.fle_corrected), c.q_limit);
    row(p + "certificate_fle_corrected", format_rational(c.fle_corrected), decimal_view(c.fle_corrected.get_d()),
        !scan2.first_failure);
    row(p + "fle_printed", format_rational(c.fle_printed), decimal_view(c.fle_printed.get_d()));
  }
  if (tr.blocks.size() > 1) row("k_strict_increase", increased ? "true" : "false", "", increased);

  Ball fin = extract_point(tr);
  if (a == 1 && cfg.quality_q_max > 0) {
    // min over q of q * max ||q xi_i||
    std::optional<AlgebraicNumber> best;
    std::vector<detail::ApproxCoord> ax;
    for (const auto& x : fin.center) ax.push_back(detail::approx(x));
    double best_hi = 1e300;
    for (std::uint64_t q = 1; q <= cfg.quality_q_max; ++q) {
      double lo = 0;
      for (const auto& c : ax) lo = std::max(lo, detail::dist_bracket(c, q).first);
      if (best && lo * static_cast<double>(q) > best_hi) continue;
      AlgebraicNumber v = AlgebraicNumber(Integer(static_cast<unsigned long>(q))) * quality(fin.center, q, 1).max_dist;
      if (!best || v < *best) {
        best = v;
        best_hi = v.to_double() * (1 + 1e-9) + 1e-15;
      }
    }
    row("final.min_q_times_dist", alg_exact(*best), best->to_decimal(20), best->sign() > 0);
    auto cert = running_min_certificate(tr, cfg.quality_q_max);
    if (cert) {
      row("final.min_q_times_dist_certified_lower_bound", alg_exact(*cert), cert->to_decimal(20),
          cert->sign() > 0 && *best >= *cert);
    }
  }
  row("final.radius", format_rational(fin.radius), decimal_view(fin.radius.get_d()));
  row("omega2_pow" + std::to_string(2 * a), format_rational(tr.omega2_pow), decimal_view(tr.omega2_pow.get_d()));

  res.transcript_json = tr.to_json().dump(2) + "\n";
  res.quality = quality_csv(fin.center, a, cfg.quality_q_max);
  res.report = report_csv(res.rows);
  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    auto write = [&](const std::string& name, const std::string& body) {
      std::ofstream out(std::filesystem::path(cfg.output_dir) / name, std::ios::binary);
      out << body;
    };
    write("transcript.json", res.transcript_json);
    write("quality.csv", res.quality);
    write("report.csv", res.report);
  }
  return res;
}

/// Worker count from JARNIK_THREADS, else the hardware concurrency.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("JARNIK_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs jobs on up to `workers` threads; results come back in input order.
template <class R>
std::vector<R> run_parallel(const std::vector<std::function<R()>>& jobs, std::size_t workers) {
  std::vector<R> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) out[i] = jobs[i]();
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(workers, jobs.size()); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

struct SweepCell {
  std::string id;
  bool ok = false;
  std::string error;
  std::vector<ReportRow> rows;
};

/// Each grid entry is a JSON merge patch applied to the template config.
inline std::vector<SweepCell> sweep(const nlohmann::json& base, const std::vector<nlohmann::json>& grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "sweep grid is empty");
  std::vector<std::function<SweepCell()>> jobs;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    jobs.push_back([&, i] {
      SweepCell cell;
      nlohmann::json cfg = base;
      cfg.merge_patch(grid[i]);
      if (!cfg.contains("id") || cfg.at("id") == base.value("id", nlohmann::json())) cfg["id"] = "cell" + std::to_string(i);
      cell.id = cfg.at("id").get<std::string>();
      try {
        ExperimentResult r = run_experiment(RunConfig::from_json(cfg));
        cell.rows = std::move(r.rows);
        cell.ok = r.all_pass;
        if (!cell.ok) cell.error = "assertion failed";
      } catch (const Error& e) {
        cell.error = std::string(error_code_name(e.code())) + ": " + e.what();
      }
      return cell;
    });
  }
  return run_parallel(jobs, worker_count());
}

struct EscapeGridRow {
  Rational alpha, beta, gamma;
  unsigned t = 0;
  AlgebraicNumber achieved;
  Rational guaranteed;
  bool pass = false;
};

/// Escape from the center of B_j = B(0, 1) on the real line against the given Black.
inline std::vector<EscapeGridRow> escape_grid(const std::vector<Rational>& values, const std::string& black_kind,
                                              std::uint64_t seed = 1) {
  AffineSubspaceSpec line({AlgebraicNumber(0)}, AlgMatrix::from_columns({{AlgebraicNumber(1)}}, 1));
  Arena arena(line);
  AffineSubspaceSpec target = AffineSubspaceSpec::point({AlgebraicNumber(0)});
  std::vector<EscapeGridRow> out;
  for (const auto& al : values) {
    for (const auto& be : values) {
      if (1 + al * be - 2 * al <= 0) continue;
      GameParams p;
      p.alpha = al;
      p.beta = be;
      p.t = GameParams::minimal_t(al, be);
      p.rho0 = 1;
      p.W = 2;
      std::unique_ptr<BlackStrategy> black;
      if (black_kind == "random") {
        black = std::make_unique<RandomBlack>(seed);
      } else {
        black = std::make_unique<GreedyBlack>();
      }
      auto [end, ph] = escape_halfspace(p, arena, Ball{{AlgebraicNumber(0)}, Rational(1)}, target, *black);
      out.push_back({al, be, p.gamma(), p.t, ph.achieved, ph.guaranteed, ph.ok && ph.full_rate});
    }
  }
  return out;
}

struct Lemma2Trial {
  unsigned d = 0, a = 0;
  AlgVector center;
  Rational rho;
  Lemma2Report report;
  std::size_t shape = 0;  // index into lemma2_shapes()
};

struct Lemma2Summary {
  std::size_t attempted = 0;
  std::size_t applicable = 0;
  std::size_t passed = 0;
  std::vector<Lemma2Trial> failures;
  std::vector<Lemma2Trial> trials;  // every applicable instance
};

struct Lemma2Shape {
  unsigned d, a;
  Rational bound;
};

inline std::vector<Lemma2Shape> lemma2_shapes() {
  return {{2, 1, Rational(64)}, {3, 1, Rational(6)}, {3, 2, Rational(24)}};
}

/// Randomized Lemma 2 instances across (d, a) in {(2,1), (3,1), (3,2)}; centers mix rationals and theta.
inline Lemma2Summary lemma2_trials(std::uint64_t seed, std::size_t wanted, std::size_t max_attempts = 0) {
  if (max_attempts == 0) max_attempts = wanted * 20;
  std::mt19937_64 rng(seed);
  FieldPtr field = field_make({Integer(-2), Integer(0), Integer(0), Integer(1)}, Rational(1), Rational(2));
  AlgebraicNumber theta = AlgebraicNumber::theta(field);
  const std::vector<Lemma2Shape> shapes = lemma2_shapes();
  std::vector<SubspaceCatalog> catalogs;
  for (const auto& s : shapes) catalogs.push_back(enumerate_catalog(s.d, s.a, s.bound));
  Lemma2Summary sum;
  while (sum.applicable < wanted && sum.attempted < max_attempts) {
    std::size_t si = sum.attempted % shapes.size();
    ++sum.attempted;
    const Lemma2Shape& s = shapes[si];
    AlgVector center;
    for (unsigned i = 0; i < s.d; ++i) {
      Rational base = ratio(static_cast<long>(rng() % 2001) - 1000, 1000);
      Rational mix = ratio(static_cast<long>(rng() % 7) - 3, 7);
      center.push_back(AlgebraicNumber(base) + AlgebraicNumber(mix) * theta);
    }
    unsigned e = 1 + static_cast<unsigned>(rng() % 8);
    Rational rho(1, 1L << e);
    Lemma2Report rep = lemma2_check(center, AlgebraicNumber(rho), catalogs[si]);
    if (!rep.applicable) continue;
    ++sum.applicable;
    Lemma2Trial trial{s.d, s.a, center, rho, rep, si};
    if (rep.passed) {
      ++sum.passed;
    } else {
      sum.failures.push_back(trial);
    }
    sum.trials.push_back(std::move(trial));
  }
  return sum;
}

}  // namespace jarnik
