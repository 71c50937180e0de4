// jarnik: command-line front end for the approximation, catalog and game engine.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "jarnik/jarnik.hpp"

using namespace jarnik;

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return j;
}

/// Accepts inline JSON or a path to a JSON file.
nlohmann::json json_arg(const std::string& text) {
  if (std::filesystem::exists(text)) return read_json_file(text);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "not a file or JSON: " + text);
  }
}

FieldPtr field_of(const nlohmann::json& j) {
  if (j.contains("field") && !j.at("field").is_null()) return FieldContext::from_json(j.at("field"));
  return nullptr;
}

AffineSubspaceSpec arena_of(const nlohmann::json& j, const FieldPtr& f) {
  return AffineSubspaceSpec::from_json(j.contains("arena") ? j.at("arena") : j, f);
}

std::string show(const IntegerMatrix& m) {
  std::string out = "[";
  for (std::size_t j = 0; j < m.cols(); ++j) {
    out += j ? ", (" : "(";
    for (std::size_t i = 0; i < m.rows(); ++i) out += (i ? "," : "") + m(i, j).get_str();
    out += ")";
  }
  return out + "]";
}

void print_rows(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows) {
    std::cout << (r.pass ? (*r.pass ? "[pass] " : "[FAIL] ") : "       ") << r.experiment << " " << r.metric << " = "
              << (r.decimal.empty() ? r.exact : r.decimal) << "\n";
  }
}

/// Builds a run config from an arena-only file plus flags, or loads a full config.
RunConfig config_from_args(const std::string& path, const std::string& alpha, const std::string& beta, int blocks,
                           const std::string& black, std::uint64_t seed, const std::string& out_dir) {
  nlohmann::json j = read_json_file(path);
  if (!j.contains("game")) {
    FieldPtr f = field_of(j);
    AffineSubspaceSpec A = arena_of(j, f);
    nlohmann::json arena = j.contains("arena") ? j.at("arena") : j;
    Integer w = (sup_norm(A.base_point()) + AlgebraicNumber(2)).ceil();
    nlohmann::json cfg = {{"id", std::filesystem::path(path).stem().string()},
                          {"arena", arena},
                          {"game",
                           {{"alpha", "1/2"}, {"beta", "1/2"}, {"rho0", "1"}, {"W", w.get_str()},
                            {"b0_center", jarnik::to_json(A.base_point())}}}};
    if (f) cfg["field"] = f->to_json();
    j = cfg;
  }
  if (!alpha.empty()) j["game"]["alpha"] = alpha;
  if (!beta.empty()) j["game"]["beta"] = beta;
  if (!alpha.empty() || !beta.empty()) j["game"].erase("t");
  if (blocks >= 0) j["blocks"] = blocks;
  if (!black.empty()) {
    j["adversary"]["kind"] = black;
    j["adversary"]["seed"] = seed;
  }
  if (!out_dir.empty()) j["output"]["dir"] = out_dir;
  return RunConfig::from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simultaneous approximation, rational subspace catalogs and Schmidt games"};
  app.require_subcommand(1);

  // catalog
  auto* cat = app.add_subcommand("catalog", "Enumerate completely rational subspaces by determinant");
  unsigned cat_d = 2, cat_a = 1;
  std::string cat_bound = "10", cat_method = "auto", cat_out;
  cat->add_option("--d", cat_d, "Ambient dimension")->default_val(2);
  cat->add_option("--a", cat_a, "Subspace dimension")->default_val(1);
  cat->add_option("--det-sq-bound", cat_bound, "Largest squared determinant")->default_val("10");
  cat->add_option("--method", cat_method, "auto, primal or dual")->default_val("auto");
  cat->add_option("--out", cat_out, "Write JSON lines here instead of stdout");

  // gamma
  auto* gam = app.add_subcommand("gamma", "Print the integer lattice of an arena");
  std::string gam_arena;
  gam->add_option("--arena", gam_arena, "Arena JSON (file or inline), optionally with a field")->required();

  // play
  auto* ply = app.add_subcommand("play", "Run the game and certify the result");
  std::string ply_arena, ply_alpha, ply_beta, ply_black, ply_out, ply_dir;
  int ply_blocks = -1;
  std::uint64_t ply_seed = 1;
  ply->add_option("--arena,--config", ply_arena, "Run config, or an arena file")->required();
  ply->add_option("--alpha", ply_alpha, "White's ratio");
  ply->add_option("--beta", ply_beta, "Black's ratio");
  ply->add_option("--blocks", ply_blocks, "Number of blocks");
  ply->add_option("--black", ply_black, "greedy, random or replay");
  ply->add_option("--seed", ply_seed, "Seed for the random adversary");
  ply->add_option("--out", ply_out, "Write the transcript here");
  ply->add_option("--out-dir", ply_dir, "Write transcript, quality and report CSVs here");

  // certify
  auto* cer = app.add_subcommand("certify", "Certified lower bound for a completed block");
  std::string cer_run;
  std::size_t cer_block = 1;
  cer->add_option("--run", cer_run, "Transcript JSON")->required();
  cer->add_option("--block", cer_block, "Block r")->required();

  // quality
  auto* qua = app.add_subcommand("quality", "Approximation profile of a point as CSV");
  std::string qua_point, qua_field;
  std::uint64_t qua_qmax = 100;
  unsigned qua_a = 1;
  qua->add_option("--point", qua_point, "JSON array of field elements")->required();
  qua->add_option("--field", qua_field, "Field JSON {minpoly, interval}");
  qua->add_option("--q-max", qua_qmax, "Largest q")->default_val(100);
  qua->add_option("--a", qua_a, "Normalization exponent denominator")->default_val(1);

  // dirichlet
  auto* dir = app.add_subcommand("dirichlet", "Solutions of the Dirichlet inequality on a rational subspace");
  std::string dir_gamma = "1/2", dir_arena, dir_point;
  std::uint64_t dir_qmax = 10000;
  dir->add_option("--gamma", dir_gamma, "Constant gamma")->default_val("1/2");
  dir->add_option("--q-max", dir_qmax, "Largest q")->default_val(10000);
  dir->add_option("--arena", dir_arena, "Arena JSON with field (default: x2 = x1)");
  dir->add_option("--point", dir_point, "Point JSON (default: (sqrt2, sqrt2))");

  // lemma2-test
  auto* lem = app.add_subcommand("lemma2-test", "Randomized check of the rational point lemma");
  std::uint64_t lem_seed = 1;
  std::size_t lem_trials = 200;
  lem->add_option("--seed", lem_seed)->default_val(1);
  lem->add_option("--trials", lem_trials)->default_val(200);

  // escape-test
  auto* esc = app.add_subcommand("escape-test", "Escape distances over an (alpha, beta) grid");
  std::string esc_grid = "1/5,1/4,1/3,1/2", esc_black = "greedy";
  std::uint64_t esc_seed = 1;
  esc->add_option("--grid", esc_grid, "Comma separated ratios")->default_val("1/5,1/4,1/3,1/2");
  esc->add_option("--black", esc_black, "greedy or random")->default_val("greedy");
  esc->add_option("--seed", esc_seed)->default_val(1);

  // sweep
  auto* swp = app.add_subcommand("sweep", "Run a grid of experiments (JARNIK_THREADS caps workers)");
  std::string swp_config, swp_out;
  swp->add_option("--config", swp_config, "Sweep JSON {template, grid}")->required();
  swp->add_option("--out", swp_out, "Write the merged report CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cat) {
      CatalogOptions o;
      if (cat_method == "primal") o.method = CatalogMethod::Primal;
      if (cat_method == "dual") o.method = CatalogMethod::Dual;
      SubspaceCatalog c = enumerate_catalog(cat_d, cat_a, parse_rational(cat_bound), o);
      std::string lines = c.to_json_lines();
      if (cat_out.empty()) {
        std::cout << lines;
      } else {
        std::ofstream(cat_out) << lines;
      }
      std::cerr << c.size() << " subspaces, " << c.distinct_values() << " determinant values\n";
      return 0;
    }
    if (*gam) {
      nlohmann::json j = json_arg(gam_arena);
      FieldPtr f = field_of(j);
      AffineSubspaceSpec A = arena_of(j, f);
      IntegerSublattice L = gamma_lattice(A);
      std::cout << "rank " << L.rank() << "\n";
      std::cout << "dim A " << A.dim() << "\n";
      std::cout << "basis " << show(L.basis) << "\n";
      if (L.rank() > 0) std::cout << "det_sq " << format_rational(gram_det_squared(L.basis).value) << "\n";
      std::cout << "completely_rational " << (L.rank() == A.dim() + 1 ? "yes" : "no") << "\n";
      std::cout << "theorem4_applicable " << (L.rank() < A.dim() ? "yes" : "no") << "\n";
      return 0;
    }
    if (*ply) {
      RunConfig cfg = config_from_args(ply_arena, ply_alpha, ply_beta, ply_blocks, ply_black, ply_seed, ply_dir);
      ExperimentResult r = run_experiment(cfg);
      if (!ply_out.empty()) std::ofstream(ply_out, std::ios::binary) << r.transcript_json;
      print_rows(r.rows);
      std::cout << (r.all_pass ? "all assertions pass\n" : "ASSERTION FAILURE\n");
      return r.all_pass ? 0 : 1;
    }
    if (*cer) {
      GameTranscript tr = GameTranscript::from_json(read_json_file(cer_run));
      CertifiedBound c = certified_bound(tr, cer_block);
      const BlockRecord& b = tr.blocks[cer_block - 1];
      auto scan = scan_linear_lower_bound(b.end.center, c.distance_coeff, c.q_limit);
      auto scan2 = scan_linear_lower_bound(b.end.center, AlgebraicNumber(c.fle_corrected), c.q_limit);
      std::cout << "block " << c.r << "\n";
      std::cout << "R^" << c.r_exponent << " = " << format_rational(c.r_pow) << "  (R = " << decimal_view(b.R())
                << ", q < R means q <= " << c.q_limit << ")\n";
      std::cout << "fle printed exponent   " << format_rational(c.fle_printed) << "\n";
      std::cout << "fle corrected exponent " << format_rational(c.fle_corrected) << "\n";
      std::cout << "distance-based c_r     " << c.distance_coeff.to_decimal(20) << " (" << c.distance_source << ")\n";
      bool ok = c.valid && !scan.first_failure && !scan2.first_failure;
      std::cout << "scan at block center: " << scan.q_checked << " q checked, "
                << (ok ? "bound holds" : "bound FAILS") << "\n";
      return ok ? 0 : 1;
    }
    if (*qua) {
      FieldPtr f = qua_field.empty() ? nullptr : FieldContext::from_json(json_arg(qua_field));
      AlgVector xi = alg_vector_from_json(json_arg(qua_point), f);
      std::cout << quality_csv(xi, qua_a, qua_qmax);
      return 0;
    }
    if (*dir) {
      FieldPtr f;
      AffineSubspaceSpec A;
      AlgVector xi;
      if (dir_arena.empty()) {
        f = field_make({Integer(-2), Integer(0), Integer(1)}, Rational(1), Rational(2));
        A = AffineSubspaceSpec({AlgebraicNumber(0), AlgebraicNumber(0)},
                               AlgMatrix::from_columns({{AlgebraicNumber(1), AlgebraicNumber(1)}}, 2));
      } else {
        nlohmann::json j = json_arg(dir_arena);
        f = field_of(j);
        A = arena_of(j, f);
      }
      if (dir_point.empty()) {
        AlgebraicNumber s = AlgebraicNumber::theta(f);
        xi = {s, s};
      } else {
        xi = alg_vector_from_json(json_arg(dir_point), f);
      }
      auto sols = dirichlet_verify(A, xi, parse_rational(dir_gamma), dir_qmax);
      std::cout << sols.size() << " solutions:";
      for (auto q : sols) std::cout << " " << q;
      std::cout << "\n";
      return 0;
    }
    if (*lem) {
      Lemma2Summary s = lemma2_trials(lem_seed, lem_trials);
      std::cout << "attempted " << s.attempted << ", precondition held " << s.applicable << ", passed " << s.passed
                << "\n";
      for (const auto& f : s.failures) {
        std::cout << "COUNTEREXAMPLE d=" << f.d << " a=" << f.a << " rho=" << format_rational(f.rho)
                  << " center=" << jarnik::to_json(f.center).dump() << " hull_dim=" << f.report.hull.dim << "\n";
      }
      bool ok = s.failures.empty() && s.applicable >= lem_trials;
      return ok ? 0 : 1;
    }
    if (*esc) {
      std::vector<Rational> values;
      std::stringstream ss(esc_grid);
      for (std::string tok; std::getline(ss, tok, ',');) values.push_back(parse_rational(tok));
      auto rows = escape_grid(values, esc_black, esc_seed);
      bool ok = true;
      std::cout << "alpha,beta,gamma,t,achieved,guaranteed,pass\n";
      for (const auto& r : rows) {
        ok = ok && r.pass;
        std::cout << format_rational(r.alpha) << "," << format_rational(r.beta) << "," << format_rational(r.gamma)
                  << "," << r.t << "," << r.achieved.to_decimal(12) << "," << format_rational(r.guaranteed) << ","
                  << (r.pass ? "pass" : "FAIL") << "\n";
      }
      return ok ? 0 : 1;
    }
    if (*swp) {
      nlohmann::json s = read_json_file(swp_config);
      std::filesystem::path tpl = std::filesystem::path(swp_config).parent_path() / s.at("template").get<std::string>();
      nlohmann::json base = read_json_file(tpl.string());
      std::vector<nlohmann::json> grid(s.at("grid").begin(), s.at("grid").end());
      auto cells = sweep(base, grid);
      std::vector<ReportRow> merged;
      bool ok = true;
      for (const auto& c : cells) {
        merged.push_back({c.id, "status", c.ok ? "ok" : c.error, "", c.ok});
        merged.insert(merged.end(), c.rows.begin(), c.rows.end());
        ok = ok && c.ok;
      }
      std::string csv = report_csv(merged);
      if (swp_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream(swp_out, std::ios::binary) << csv;
        print_rows(merged);
      }
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
