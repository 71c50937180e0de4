#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace jt;

namespace {

nlohmann::json flagship_json() {
  std::ifstream in(std::string(JARNIK_SOURCE_DIR) + "/configs/cubic-line.json");
  nlohmann::json j;
  in >> j;
  j.erase("output");
  return j;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string find_row(const std::vector<ReportRow>& rows, const std::string& metric) {
  for (const auto& r : rows)
    if (r.metric == metric) return r.exact;
  return "<missing>";
}

}  // namespace

TEST(Config, FlagshipParses) {
  auto cfg = RunConfig::from_file(std::string(JARNIK_SOURCE_DIR) + "/configs/cubic-line.json");
  EXPECT_EQ(cfg.id, "cubic-line");
  EXPECT_EQ(cfg.blocks, 6u);
  EXPECT_EQ(cfg.params.t, 2u);
  EXPECT_EQ(cfg.field->degree(), 3);
  EXPECT_TRUE(cfg.arena_applicable);
  EXPECT_EQ(cfg.output_dir, "out/cubic-line");
}

TEST(Config, Rejections) {
  auto j = flagship_json();
  j["game"]["alpha"] = "3/4";
  EXPECT_CODE(RunConfig::from_json(j), ConfigInvalid);

  j = flagship_json();
  j["game"]["W"] = "2";
  EXPECT_CODE(RunConfig::from_json(j), ConfigInvalid);

  j = flagship_json();
  j["adversary"]["kind"] = "oracle";
  EXPECT_CODE(RunConfig::from_json(j), ConfigInvalid);

  j = flagship_json();
  j["arena"]["base"] = nlohmann::json::parse(R"([["0"], ["0"]])");
  j["arena"]["directions"] = nlohmann::json::parse(R"([[["1"], ["1"]]])");
  j["game"]["b0_center"] = nlohmann::json::parse(R"([["0"], ["0"]])");
  EXPECT_CODE(RunConfig::from_json(j), ConfigInvalid);

  j = flagship_json();
  j.erase("game");
  EXPECT_CODE(RunConfig::from_json(j), ConfigInvalid);
}

TEST(Config, MissingTUsesMinimal) {
  auto j = flagship_json();
  j["game"].erase("t");
  j["game"]["alpha"] = "1/3";
  EXPECT_EQ(RunConfig::from_json(j).params.t, GameParams::minimal_t(rq(1, 3), rq(1, 2)));
}

TEST(Experiment, ZeroBlocks) {
  auto j = flagship_json();
  j["blocks"] = 0;
  j["quality_q_max"] = 20;
  auto res = run_experiment(RunConfig::from_json(j));
  EXPECT_TRUE(res.transcript.moves.empty());
  EXPECT_TRUE(res.all_pass);
  EXPECT_EQ(std::count(res.quality.begin(), res.quality.end(), '\n'), 21);
  EXPECT_NE(find_row(res.rows, "final.min_q_times_dist"), "<missing>");
  EXPECT_EQ(find_row(res.rows, "final.radius"), "1");
  EXPECT_FALSE(running_min_certificate(res.transcript, 20).has_value());
}

TEST(Experiment, ArtifactsAreReproducible) {
  auto dir = std::filesystem::temp_directory_path() / "jarnik_harness_test";
  std::filesystem::remove_all(dir);
  auto j = flagship_json();
  j["blocks"] = 2;
  j["quality_q_max"] = 200;
  j["output"] = {{"dir", (dir / "a").string()}};
  auto first = run_experiment(RunConfig::from_json(j));
  j["output"] = {{"dir", (dir / "b").string()}};
  auto second = run_experiment(RunConfig::from_json(j));
  EXPECT_TRUE(first.all_pass);
  for (const char* name : {"transcript.json", "quality.csv", "report.csv"}) {
    std::string a = slurp(dir / "a" / name), b = slurp(dir / "b" / name);
    EXPECT_FALSE(a.empty()) << name;
    EXPECT_EQ(a, b) << name;
  }
  EXPECT_EQ(find_row(first.rows, "block1.k"), "0");
  std::filesystem::remove_all(dir);
}

TEST(Experiment, ReplayAdversaryMatchesGreedy) {
  auto j = flagship_json();
  j["blocks"] = 1;
  j["quality_q_max"] = 50;
  auto greedy = run_experiment(RunConfig::from_json(j));
  nlohmann::json script = nlohmann::json::array();
  for (const auto& c : greedy.transcript.black_centers()) script.push_back(to_json(c));
  j["adversary"] = {{"kind", "replay"}, {"script", script}};
  auto replay = run_experiment(RunConfig::from_json(j));
  ASSERT_EQ(replay.rows.size(), greedy.rows.size());
  for (std::size_t i = 0; i < replay.rows.size(); ++i) EXPECT_EQ(replay.rows[i].exact, greedy.rows[i].exact);
}

TEST(Sweep, CellsMatchDirectRuns) {
  auto base = flagship_json();
  base["quality_q_max"] = 30;
  std::vector<nlohmann::json> grid = {
      nlohmann::json::parse(R"({"id": "x", "blocks": 1})"),
      nlohmann::json::parse(R"({"id": "bad", "game": {"alpha": "3/4"}})"),
  };
  auto cells = sweep(base, grid);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_TRUE(cells[0].ok);
  auto direct = base;
  direct.merge_patch(grid[0]);
  auto res = run_experiment(RunConfig::from_json(direct));
  ASSERT_EQ(cells[0].rows.size(), res.rows.size());
  for (std::size_t i = 0; i < res.rows.size(); ++i) EXPECT_EQ(cells[0].rows[i].exact, res.rows[i].exact);
  EXPECT_FALSE(cells[1].ok);
  EXPECT_NE(cells[1].error.find("ConfigInvalid"), std::string::npos);
  EXPECT_CODE(sweep(base, {}), InvalidArgument);
}

TEST(Parallel, OrderAndThreadCap) {
  setenv("JARNIK_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  unsetenv("JARNIK_THREADS");
  EXPECT_GE(worker_count(), 1u);
  std::vector<std::function<int()>> jobs;
  for (int i = 0; i < 20; ++i) jobs.push_back([i] { return i * i; });
  auto out = run_parallel(jobs, 4);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(out[static_cast<std::size_t>(i)], i * i);
}

TEST(Report, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
  auto csv = report_csv({{"e", "m", "[\"1\",\"2\"]", "0.5", true}});
  EXPECT_EQ(csv, "experiment,metric,exact,decimal,pass\ne,m,\"[\"\"1\"\",\"\"2\"\"]\",0.5,pass\n");
}

TEST(EscapeGrid, AllPairsPass) {
  std::vector<Rational> vals = {rq(1, 5), rq(1, 4), rq(1, 3), rq(1, 2)};
  auto rows = escape_grid(vals, "greedy");
  EXPECT_EQ(rows.size(), 16u);
  for (const auto& r : rows) EXPECT_TRUE(r.pass);
  for (const auto& r : rows)
    if (r.alpha == rq(1, 2) && r.beta == rq(1, 2)) {
      EXPECT_EQ(r.t, 2u);
      EXPECT_EQ(r.achieved, q(1, 4));
    }
}

TEST(Lemma2Trials, SmallRun) {
  auto s = lemma2_trials(5, 30);
  EXPECT_EQ(s.applicable, 30u);
  EXPECT_EQ(s.passed, 30u);
  EXPECT_TRUE(s.failures.empty());
}
