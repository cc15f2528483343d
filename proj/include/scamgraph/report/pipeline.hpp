#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "scamgraph/ingest/dataset_io.hpp"
#include "scamgraph/patterns/overlap.hpp"
#include "scamgraph/report/tables.hpp"

namespace scamgraph {

/// Lazily built analysis state shared by the stages. Everything is computed
/// on first use, so a stage whose output is already current costs nothing.
class Analysis {
public:
  explicit Analysis(PipelineConfig cfg) : cfg_(std::move(cfg)) {}

  const PipelineConfig& config() const { return cfg_; }

  const stage::Provenance& provenance() {
    if (!prov_) prov_ = stage::provenance(cfg_);
    return *prov_;
  }

  const DatasetSnapshot& snapshot() {
    if (!snap_) snap_ = std::make_unique<DatasetSnapshot>(DatasetSnapshot::build(load_dataset(cfg_.dataset)));
    return *snap_;
  }

  const ScanResult& scan() {
    if (!scan_) {
      const auto& s = snapshot();
      scan_ = std::make_unique<ScanResult>(scamgraph::scan(s, cfg_.exclusion_list(), cfg_.scan_options()));
    }
    return *scan_;
  }

  const FundingIndex& funding() {
    if (!funding_) {
      const auto& s = snapshot();
      const auto& r = scan();
      funding_ = std::make_unique<FundingIndex>(s, r, cfg_.funding_options());
    }
    return *funding_;
  }

  const PatternSet& patterns() {
    if (!patterns_) {
      const auto& fx = funding();
      PatternSet p;
      p.stars = detect_stars(fx, StarOptions{cfg_.star_min});
      p.chains = detect_chains(fx);
      p.flows = detect_major_flows(fx);
      patterns_ = std::make_unique<PatternSet>(std::move(p));
    }
    return *patterns_;
  }

  ClusterSet& clusters() {
    if (!clusters_) {
      const auto& s = snapshot();
      const auto& r = scan();
      auto set = build_clusters(r, s, cfg_.cluster_options());
      cluster_pattern_census(set, patterns());
      clusters_ = std::make_unique<ClusterSet>(std::move(set));
    }
    return *clusters_;
  }

  /// Reuse clusters restored from a current clusters.jsonl.
  void adopt_clusters(ClusterSet set) { clusters_ = std::make_unique<ClusterSet>(std::move(set)); }

  const TerminalPolicy& policy() {
    if (!policy_) policy_ = std::make_unique<TerminalPolicy>(cfg_.terminal_policy());
    return *policy_;
  }

  const ScamContext& context() {
    if (!ctx_) {
      const auto& s = snapshot();
      const auto& r = scan();
      ctx_ = std::make_unique<ScamContext>(s, r, policy());
    }
    return *ctx_;
  }

private:
  PipelineConfig cfg_;
  std::optional<stage::Provenance> prov_;
  // heap-held so the pointers FundingIndex and ScamContext keep stay valid
  std::unique_ptr<DatasetSnapshot> snap_;
  std::unique_ptr<ScanResult> scan_;
  std::unique_ptr<FundingIndex> funding_;
  std::unique_ptr<PatternSet> patterns_;
  std::unique_ptr<ClusterSet> clusters_;
  std::unique_ptr<TerminalPolicy> policy_;
  std::unique_ptr<ScamContext> ctx_;
};

namespace stages {

using stage::ojson;

inline std::vector<ojson> scan_records(Analysis& a) {
  const auto& scan = a.scan();
  std::vector<ojson> out;
  out.push_back(stage::scan_summary(scan));
  for (std::size_t i = 0; i < scan.scams.size(); ++i) out.push_back(stage::scam_record(scan, i));
  return out;
}

struct PatternKinds {
  bool star = true, chain = true, flow = true;

  /// "star,chain,flow" or any subset.
  static PatternKinds parse(const std::string& list) {
    PatternKinds k{false, false, false};
    std::size_t pos = 0;
    while (pos <= list.size()) {
      auto end = list.find(',', pos);
      if (end == std::string::npos) end = list.size();
      auto w = list.substr(pos, end - pos);
      if (w == "star") k.star = true;
      else if (w == "chain") k.chain = true;
      else if (w == "flow") k.flow = true;
      else if (!w.empty()) throw Error(ErrorCode::InvalidConfig, "unknown pattern kind '" + w + "'");
      pos = end + 1;
    }
    return k;
  }
};

inline std::vector<ojson> pattern_records(Analysis& a, PatternKinds kinds = {}) {
  const auto& p = a.patterns();
  std::vector<ojson> out;
  if (kinds.star)
    for (const auto& s : p.stars) out.push_back(stage::star_record(s));
  if (kinds.chain)
    for (const auto& c : p.chains) out.push_back(stage::chain_record(c));
  if (kinds.flow)
    for (const auto& f : p.flows) out.push_back(stage::flow_record(f));
  return out;
}

inline std::vector<ojson> cluster_records(Analysis& a) {
  const auto& set = a.clusters();
  const auto& scan = a.scan();
  std::vector<ojson> out;
  for (const auto& c : set.clusters) out.push_back(stage::cluster_record(c, scan));
  return out;
}

inline sim::FingerprintSet fingerprints(Analysis& a) {
  std::vector<ContractRecord> contracts;
  for (const auto& [addr, c] : a.snapshot().contracts()) contracts.push_back(c);
  auto cache_path = a.config().out_dir / "cache" / "fingerprints.jsonl";
  sim::FingerprintCache cache;
  cache.load(cache_path);
  sim::BuiltinParserProvider provider;
  auto fps = sim::fingerprint_contracts(contracts, provider, &cache);
  std::filesystem::create_directories(cache_path.parent_path());
  cache.save(cache_path);
  return fps;
}

inline std::vector<ojson> intra_records(const std::vector<sim::TokenCluster>& clusters, const sim::FingerprintSet& fps) {
  std::vector<ojson> out;
  for (const auto& c : clusters) {
    ojson j;
    j["cluster"] = c.id;
    j["tokens"] = c.tokens.size();
    j["usable"] = sim::usable_members(c, fps).size();
    try {
      j["score"] = sim::intra_cluster_similarity(c, fps);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientContracts) throw;
      j["score"] = nullptr;
      j["error"] = "InsufficientContracts";
    }
    out.push_back(j);
  }
  return out;
}

inline sim::InterSampling sampling(const PipelineConfig& cfg) {
  return {cfg.sim_max_tokens, cfg.sim_partner_clusters, cfg.sim_repeats, cfg.seed};
}

inline std::vector<ojson> inter_records(const std::vector<sim::TokenCluster>& clusters, const sim::FingerprintSet& fps,
                                        const sim::InterSampling& params) {
  std::vector<ojson> out;
  std::vector<sim::InterClusterScore> scores;
  try {
    scores = sim::inter_cluster_similarity(clusters, fps, params);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientContracts) throw;
    out.push_back(ojson{{"summary", "inter"}, {"error", "InsufficientContracts"}});
    return out;
  }
  for (const auto& s : scores) {
    ojson j;
    j["cluster"] = s.cluster;
    j["score"] = s.score ? ojson(*s.score) : ojson();
    if (!s.error.empty()) j["error"] = s.error;
    out.push_back(j);
  }
  return out;
}

enum class ProfitMode { naive, cluster, both };

inline ProfitMode parse_profit_mode(const std::string& s) {
  if (s == "naive") return ProfitMode::naive;
  if (s == "cluster") return ProfitMode::cluster;
  if (s == "both") return ProfitMode::both;
  throw Error(ErrorCode::InvalidConfig, "profit mode must be naive, cluster or both");
}

inline std::vector<ojson> profit_records(Analysis& a, ProfitMode mode = ProfitMode::both) {
  const auto& scan = a.scan();
  const auto& snap = a.snapshot();
  std::vector<ojson> out;
  if (mode != ProfitMode::cluster)
    for (std::size_t i = 0; i < scan.scams.size(); ++i) {
      auto j = stage::pool_profit_record(naive_profit(scan, i, snap));
      j["kind"] = "pool";
      out.push_back(j);
    }
  if (mode != ProfitMode::naive) {
    std::vector<ClusterProfitReport> reports;
    for (const auto& c : a.clusters().clusters) reports.push_back(cluster_total_profit(c, scan, snap));
    for (const auto& r : reports) out.push_back(stage::cluster_profit_record(r));
    out.push_back(stage::inflation_record(inflation_summary(reports)));
  }
  return out;
}

/// One network per cluster, or only the listed cluster ids.
inline std::vector<ojson> network_records(Analysis& a, std::optional<std::size_t> max_nodes,
                                          const std::optional<std::size_t>& only = std::nullopt) {
  auto& set = a.clusters();
  const auto& ctx = a.context();
  std::vector<ojson> out;
  if (only && *only >= set.clusters.size())
    throw Error(ErrorCode::InvalidConfig, "no cluster with id " + std::to_string(*only));
  for (const auto& c : set.clusters) {
    if (only && c.id != *only) continue;
    auto net = expand_network(c, ctx, max_nodes);
    auto profit = network_aware_profit(net, a.scan(), a.snapshot());
    out.push_back(stage::network_record(net, profit, a.snapshot()));
  }
  return out;
}

}  // namespace stages

struct StageOutcome {
  std::string name;
  bool cached = false;
  std::size_t records = 0;
  double seconds = 0;
};

struct PipelineResult {
  int exit_code = 0;
  std::vector<StageOutcome> stages;
  std::string failed_stage;
  std::string error;
};

inline constexpr const char* kPipelineUsage =
    "usage: scamgraph pipeline --config pipeline.toml [--dataset DIR] [--out DIR]\n"
    "  the dataset directory must contain manifest.json (see `scamgraph ingest` or `scamgraph synth`)\n";

/// Runs scan, patterns, clusters, similarity, profit, networks and report in
/// order. A stage whose file already carries the current header is skipped.
/// The first failure stops the run; files of earlier stages are kept.
inline PipelineResult run_pipeline(const PipelineConfig& cfg, std::ostream& log) {
  PipelineResult res;
  if (!std::filesystem::exists(cfg.dataset / "manifest.json")) {
    log << "error: dataset " << cfg.dataset.string() << " not found or has no manifest.json\n" << kPipelineUsage;
    res.exit_code = 2;
    res.failed_stage = "ingest";
    res.error = "dataset missing";
    return res;
  }
  Analysis a(cfg);
  const auto& out = cfg.out_dir;
  std::filesystem::create_directories(out);

  auto run = [&](const std::string& name, const std::string& file, auto&& produce) {
    StageOutcome o{name};
    auto t0 = std::chrono::steady_clock::now();
    auto path = out / file;
    const auto& prov = a.provenance();
    if (stage::up_to_date(path, name, prov)) {
      o.cached = true;
      o.records = stage::read_jsonl(path).records.size();
    } else {
      auto recs = produce();
      stage::write_jsonl(path, name, prov, recs);
      o.records = recs.size();
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.stages.push_back(o);
  };

  std::string current;
  try {
    current = "scan";
    run("scan", "scan.jsonl", [&] { return stages::scan_records(a); });
    current = "patterns";
    run("patterns", "patterns.jsonl", [&] { return stages::pattern_records(a); });
    current = "clusters";
    {
      auto path = out / "clusters.jsonl";
      if (stage::up_to_date(path, "clusters", a.provenance()))
        a.adopt_clusters(stage::clusters_from(stage::read_jsonl(path).records));
      run("clusters", "clusters.jsonl", [&] { return stages::cluster_records(a); });
    }
    if (cfg.similarity) {
      current = "similarity";
      std::optional<sim::FingerprintSet> fps;
      std::vector<sim::TokenCluster> tcs;
      auto prepare = [&] {
        if (fps) return;
        tcs = stage::token_clusters(stage::read_jsonl(out / "clusters.jsonl").records);
        fps = stages::fingerprints(a);
      };
      run("similarity_intra", "similarity_intra.jsonl", [&] {
        prepare();
        return stages::intra_records(tcs, *fps);
      });
      run("similarity_inter", "similarity_inter.jsonl", [&] {
        prepare();
        return stages::inter_records(tcs, *fps, stages::sampling(cfg));
      });
    }
    current = "profit";
    run("profit", "profit.jsonl", [&] { return stages::profit_records(a); });
    if (cfg.networks) {
      current = "networks";
      run("networks", "networks.jsonl", [&] { return stages::network_records(a, cfg.max_nodes); });
    }
    current = "report";
    {
      StageOutcome o{"report"};
      auto t0 = std::chrono::steady_clock::now();
      // cheap, so it always runs from the stage files on disk
      auto files = report::emit_report(report::StageRecords::load(out), out / "report", a.provenance());
      o.records = files.size();
      o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      res.stages.push_back(o);
    }
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.failed_stage = current;
    res.error = e.what();
    log << "error: stage " << current << " failed: " << e.what() << "\n";
  }

  log << "stage              status   records   seconds\n";
  for (const auto& s : res.stages) {
    char line[128];
    std::snprintf(line, sizeof line, "%-18s %-8s %7zu %9.2f\n", s.name.c_str(), s.cached ? "cached" : "ran", s.records,
                  s.seconds);
    log << line;
  }
  if (res.exit_code == 0) log << "config_hash " << a.provenance().config_hash << "\n";
  return res;
}

}  // namespace scamgraph
