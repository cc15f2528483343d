#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "scamgraph/ingest/dataset_io.hpp"
#include "scamgraph/report/pipeline.hpp"
#include "scamgraph/synth/generator.hpp"

using namespace scamgraph;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("scamgraph-pipe-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

PlantSpec small_spec() {
  PlantSpec s;
  s.seed = 11;
  s.stars = 3;
  s.star_max = 7;
  s.chains = 2;
  s.chain_max = 5;
  s.flows = 2;
  s.clusters = {3, 4, 2};
  s.wash_swaps = 2;
  s.phishing = 1;
  s.token_sources = true;
  s.noise_addresses = 10;
  s.noise_transfers = 30;
  s.noise_pools = 2;
  return s;
}

PipelineConfig config_for(const fs::path& root) {
  save_dataset(generate(small_spec()).first, root / "data");
  PipelineConfig c;
  c.dataset = root / "data";
  c.out_dir = root / "out";
  c.sim_repeats = 3;
  return c;
}

std::string slurp(const fs::path& p) { return stage::read_file(p); }

}  // namespace

TEST(Config, TomlOverridesAndRejectsUnknownKeys) {
  auto c = PipelineConfig::from_toml(R"(
dataset = "d"
seed = 9
[patterns]
p = "0.8"
star_min = 6
[network]
ell = 10
big_l = 20
max_nodes = 50
)",
                                     "/base");
  EXPECT_EQ(c.dataset, fs::path("/base/d"));
  EXPECT_EQ(c.seed, 9u);
  EXPECT_TRUE(c.p == Fraction(4, 5) || (c.p.num * 5 == c.p.den * 4));
  EXPECT_EQ(c.star_min, 6u);
  EXPECT_EQ(c.max_nodes, std::optional<std::size_t>(50));
  try {
    PipelineConfig::from_toml("[patterns]\nq = 1\n");
    FAIL() << "unknown key accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
    EXPECT_NE(std::string(e.what()).find("patterns.q"), std::string::npos);
  }
  EXPECT_THROW(PipelineConfig::from_toml("[network]\nell = 10\nbig_l = 5\n"), Error);
  EXPECT_THROW(PipelineConfig::from_toml("[patterns]\np = \"1.5\"\n"), Error);
}

TEST(Config, HashIgnoresPathsButNotThresholds) {
  PipelineConfig a, b;
  b.dataset = "/elsewhere";
  b.out_dir = "/tmp/x";
  EXPECT_EQ(a.hash(), b.hash());
  b.star_min = 6;
  EXPECT_NE(a.hash(), b.hash());
}

TEST(Report, HistogramPutsIdenticalScoresInOneBin) {
  auto h = report::histogram({1.0, 1.0, 1.0});
  ASSERT_EQ(h.size(), 21u);
  EXPECT_EQ(h[20], 3u);
  for (std::size_t k = 0; k < 20; ++k) EXPECT_EQ(h[k], 0u);
  auto g = report::histogram({0.0, 0.49, 0.51, 0.074});
  EXPECT_EQ(g[0], 1u);
  EXPECT_EQ(g[10], 2u);
  EXPECT_EQ(g[1], 1u);
}

TEST(Report, EmptyPatternSetGivesZeroRowTables) {
  auto stars = report::star_table({});
  ASSERT_EQ(stars.rows.size(), 3u);
  for (const auto& r : stars.rows) {
    EXPECT_EQ(r[1], "0");
    EXPECT_EQ(r[2], "-");
  }
  auto chains = report::chain_table({});
  EXPECT_EQ(chains.rows.at(0).at(0), "0");
  auto flows = report::flow_table({});
  EXPECT_EQ(flows.rows.at(0).at(0), "0");
  EXPECT_TRUE(report::profit_table({}).rows.empty());
}

TEST(Report, MaxAvgFormatting) {
  EXPECT_EQ(report::max_avg({5, 7, 9}, 1), "9.0;7.0");
  EXPECT_EQ(report::max_avg({}, 2), "-");
}

TEST(Pipeline, MissingDatasetExitsWithTwo) {
  auto root = scratch("missing");
  PipelineConfig c;
  c.dataset = root / "nope";
  c.out_dir = root / "out";
  std::ostringstream log;
  auto r = run_pipeline(c, log);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(log.str().find("usage:"), std::string::npos);
}

TEST(Pipeline, RunsAllStagesThenServesFromCache) {
  auto root = scratch("full");
  auto cfg = config_for(root);
  std::ostringstream log1;
  auto r1 = run_pipeline(cfg, log1);
  ASSERT_EQ(r1.exit_code, 0) << log1.str();
  for (const char* f : {"scan.jsonl", "patterns.jsonl", "clusters.jsonl", "similarity_intra.jsonl",
                        "similarity_inter.jsonl", "profit.jsonl", "networks.jsonl", "report/report.md",
                        "report/stars.csv", "report/similarity_intra_hist.csv", "cache/fingerprints.jsonl"})
    EXPECT_TRUE(fs::exists(cfg.out_dir / f)) << f;
  for (const auto& s : r1.stages) EXPECT_FALSE(s.cached) << s.name;

  auto clusters = stage::read_jsonl(cfg.out_dir / "clusters.jsonl");
  EXPECT_EQ(clusters.header["config_hash"], cfg.hash());
  EXPECT_GE(clusters.records.size(), 3u);
  auto intra = stage::read_jsonl(cfg.out_dir / "similarity_intra.jsonl").records;
  std::size_t scored = 0;
  for (const auto& r : intra) scored += r["score"].is_number();
  EXPECT_GE(scored, 3u);

  auto before = slurp(cfg.out_dir / "profit.jsonl");
  std::ostringstream log2;
  auto r2 = run_pipeline(cfg, log2);
  ASSERT_EQ(r2.exit_code, 0);
  for (const auto& s : r2.stages)
    if (s.name != "report") EXPECT_TRUE(s.cached) << s.name;
  EXPECT_EQ(before, slurp(cfg.out_dir / "profit.jsonl"));

  // a threshold change invalidates the patterns and everything downstream
  cfg.star_min = 6;
  std::ostringstream log3;
  auto r3 = run_pipeline(cfg, log3);
  ASSERT_EQ(r3.exit_code, 0);
  EXPECT_FALSE(r3.stages.at(1).cached);
}

TEST(Pipeline, OutputIsDeterministicAcrossDirectories) {
  auto a = scratch("det-a");
  auto b = scratch("det-b");
  auto ca = config_for(a);
  auto cb = config_for(b);
  std::ostringstream la, lb;
  ASSERT_EQ(run_pipeline(ca, la).exit_code, 0);
  ASSERT_EQ(run_pipeline(cb, lb).exit_code, 0);
  for (const char* f : {"scan.jsonl", "patterns.jsonl", "clusters.jsonl", "similarity_inter.jsonl", "profit.jsonl",
                        "networks.jsonl", "report/report.md", "report/stars.csv"})
    EXPECT_EQ(slurp(ca.out_dir / f), slurp(cb.out_dir / f)) << f;
}

TEST(Pipeline, FailureNamesTheStageAndKeepsEarlierOutput) {
  auto root = scratch("fail");
  auto cfg = config_for(root);
  // a directory where the network file should go makes that stage fail
  fs::create_directories(cfg.out_dir / "networks.jsonl");
  fs::create_directories(cfg.out_dir / "networks.jsonl" / "blocker");
  std::ostringstream log;
  auto r = run_pipeline(cfg, log);
  EXPECT_NE(r.exit_code, 0);
  EXPECT_EQ(r.failed_stage, "networks");
  EXPECT_NE(log.str().find("networks"), std::string::npos);
  EXPECT_TRUE(fs::exists(cfg.out_dir / "profit.jsonl"));
}
