// scamgraph: command-line entry point. Every subcommand accepts --config with
// a TOML file; flags given on the command line win over the file.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scamgraph/ingest/http_transport.hpp"
#include "scamgraph/scamgraph.hpp"

using namespace scamgraph;
namespace fs = std::filesystem;

namespace {

/// Flags shared by the analysis subcommands. Unset optionals leave the config value alone.
struct Overrides {
  std::string config;
  std::optional<std::string> dataset, out_dir, exclusions, public_labels, p, burn_share;
  std::optional<std::size_t> star_min, min_size, max_nodes;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> day_seconds;

  void attach(CLI::App* app, bool analysis = true) {
    app->add_option("--config", config, "TOML config file");
    app->add_option("--dataset", dataset, "dataset directory (manifest.json + entity files)");
    app->add_option("--out-dir", out_dir, "output directory for stage files");
    app->add_option("--seed", seed, "RNG seed");
    if (!analysis) return;
    app->add_option("--exclusions", exclusions, "newline-delimited addresses never treated as scammers");
    app->add_option("--day-seconds", day_seconds, "maximum pool lifetime in seconds");
    app->add_option("--burn-share", burn_share, "share of minted LP that must be burned, e.g. 0.99");
  }

  PipelineConfig resolve() const {
    PipelineConfig c = config.empty() ? PipelineConfig{} : PipelineConfig::load(config);
    if (dataset) c.dataset = *dataset;
    if (out_dir) c.out_dir = *out_dir;
    if (exclusions) c.exclusions = fs::path(*exclusions);
    if (public_labels) c.public_labels = fs::path(*public_labels);
    if (p) c.p = Fraction::parse(*p);
    if (burn_share) c.burn_share = Fraction::parse(*burn_share);
    if (star_min) c.star_min = *star_min;
    if (min_size) c.cluster_min_size = *min_size;
    if (max_nodes) c.max_nodes = *max_nodes;
    if (seed) c.seed = *seed;
    if (day_seconds) c.day_seconds = *day_seconds;
    c.validate();
    return c;
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_dataset(const PipelineConfig& c) {
  if (c.dataset.empty() || !fs::exists(c.dataset / "manifest.json"))
    throw UsageError("dataset '" + c.dataset.string() + "' not found or has no manifest.json (pass --dataset DIR)");
}

fs::path out_or(const std::string& flag, const PipelineConfig& c, const char* fallback) {
  return flag.empty() ? c.out_dir / fallback : fs::path(flag);
}

void write_stage(const fs::path& out, const std::string& stage, Analysis& a, const std::vector<stage::ojson>& recs) {
  stage::write_jsonl(out, stage, a.provenance(), recs);
  std::cout << "wrote " << recs.size() << " record(s) to " << out.string() << "\n";
}

std::string ether4(const Wei& w) { return report::fixed(w.ether(), 4); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scamgraph: rug-pull, funding-pattern, cluster, similarity and profit analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "scamgraph 1.0");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "fetch pools, events, transfers and sources into a dataset directory");
  std::string factory, wrapped_native, ingest_out, transcript, base_url = ApiClientConfig{}.base_url;
  std::uint64_t from = 0, to = 0, chain_id = 1;
  double rps = 5;
  std::size_t max_events = 1000;
  ingest->add_option("--factory", factory, "factory contract address")->required();
  ingest->add_option("--wrapped-native", wrapped_native, "wrapped native token address")->required();
  ingest->add_option("--from", from, "first pool index")->required();
  ingest->add_option("--to", to, "one past the last pool index")->required();
  ingest->add_option("--chain-id", chain_id);
  ingest->add_option("--base-url", base_url);
  ingest->add_option("--rps", rps, "maximum requests per second");
  ingest->add_option("--max-events", max_events, "events fetched per pool");
  ingest->add_option("--transcript", transcript, "replay a recorded JSON transcript instead of the network");
  ingest->add_option("--out", ingest_out, "dataset directory")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "generate a dataset with planted scams and patterns");
  std::string synth_spec, synth_out, truth_out;
  std::optional<std::uint64_t> synth_seed;
  synth->add_option("--spec", synth_spec, "plant spec JSON")->required();
  synth->add_option("--out", synth_out, "dataset directory")->required();
  synth->add_option("--truth", truth_out, "ground truth JSON output");
  synth->add_option("--seed", synth_seed);

  // scan
  Overrides scan_o;
  std::string scan_out;
  auto* scan_cmd = app.add_subcommand("scan", "find one-day rug pulls and their scammer addresses");
  scan_o.attach(scan_cmd);
  scan_cmd->add_option("--out", scan_out, "scan.jsonl");

  // detect-patterns
  Overrides pat_o;
  std::string pat_out, kinds = "star,chain,flow";
  auto* pat_cmd = app.add_subcommand("detect-patterns", "mine stars, chains and major flows");
  pat_o.attach(pat_cmd);
  pat_cmd->add_option("--p", pat_o.p, "beneficiary share threshold, e.g. 0.90");
  pat_cmd->add_option("--star-min", pat_o.star_min, "minimum satellites per star");
  pat_cmd->add_option("--kinds", kinds, "comma-separated subset of star,chain,flow");
  pat_cmd->add_option("--out", pat_out, "patterns.jsonl");

  // build-clusters
  Overrides cl_o;
  std::string cl_out, cl_dot;
  auto* cl_cmd = app.add_subcommand("build-clusters", "connected components over scammer addresses");
  cl_o.attach(cl_cmd);
  cl_cmd->add_option("--min-size", cl_o.min_size);
  cl_cmd->add_option("--p", cl_o.p, "threshold used for the per-cluster pattern census");
  cl_cmd->add_option("--out", cl_out, "clusters.jsonl");
  cl_cmd->add_option("--dot", cl_dot, "directory for one DOT file per cluster");

  // similarity
  Overrides sim_o;
  std::string sim_mode, sim_clusters, sim_contracts, sim_out, sim_cache, sim_ast_dir;
  auto* sim_cmd = app.add_subcommand("similarity", "AST-Jaccard similarity within or across clusters");
  sim_o.attach(sim_cmd, false);
  sim_cmd->add_option("mode", sim_mode, "intra or inter")->required()->check(CLI::IsMember({"intra", "inter"}));
  sim_cmd->add_option("--clusters", sim_clusters, "clusters.jsonl")->required();
  sim_cmd->add_option("--contracts", sim_contracts, "contracts.jsonl (defaults to the dataset's)");
  sim_cmd->add_option("--cache", sim_cache, "fingerprint cache file");
  sim_cmd->add_option("--ast-json-dir", sim_ast_dir, "use <address>.json compiler ASTs from this directory");
  sim_cmd->add_option("--out", sim_out, "scores.jsonl");

  // profit
  Overrides pr_o;
  std::string pr_clusters, pr_mode = "both", pr_out;
  auto* pr_cmd = app.add_subcommand("profit", "naive and cluster-aware scam profits");
  pr_o.attach(pr_cmd);
  pr_cmd->add_option("--clusters", pr_clusters, "clusters.jsonl (recomputed when absent)");
  pr_cmd->add_option("--mode", pr_mode)->check(CLI::IsMember({"naive", "cluster", "both"}));
  pr_cmd->add_option("--out", pr_out, "profits.jsonl");

  // build-network
  Overrides net_o;
  std::optional<std::size_t> net_cluster;
  std::string net_policy, net_dot, net_out, net_clusters;
  auto* net_cmd = app.add_subcommand("build-network", "expand clusters into scam networks with role labels");
  net_o.attach(net_cmd);
  net_cmd->add_option("--cluster-id", net_cluster, "only this cluster");
  net_cmd->add_option("--clusters", net_clusters, "clusters.jsonl (recomputed when absent)");
  net_cmd->add_option("--max-nodes", net_o.max_nodes);
  net_cmd->add_option("--policy", net_policy, "TOML with a [network] table: ell, big_l, public_labels, ...");
  net_cmd->add_option("--public-labels", net_o.public_labels, "address,label lines of terminal services");
  net_cmd->add_option("--dot", net_dot, "DOT output (single cluster) or directory");
  net_cmd->add_option("--out", net_out, "networks.jsonl");

  // report
  Overrides rep_o;
  std::string rep_stages, rep_out;
  auto* rep_cmd = app.add_subcommand("report", "markdown, CSV and histogram data from stage files");
  rep_o.attach(rep_cmd, false);
  rep_cmd->add_option("--stages", rep_stages, "directory holding the stage .jsonl files");
  rep_cmd->add_option("--out", rep_out, "report directory");

  // pipeline
  Overrides pipe_o;
  auto* pipe_cmd = app.add_subcommand("pipeline", "scan through report with cached, resumable stages");
  pipe_o.attach(pipe_cmd);
  pipe_cmd->add_option("--p", pipe_o.p);
  pipe_cmd->add_option("--star-min", pipe_o.star_min);
  pipe_cmd->add_option("--min-size", pipe_o.min_size);
  pipe_cmd->add_option("--max-nodes", pipe_o.max_nodes);
  pipe_cmd->add_option("--public-labels", pipe_o.public_labels);

  CLI11_PARSE(app, argc, argv);

  std::string stage_name;
  try {
    if (*ingest) {
      stage_name = "ingest";
      ApiClientConfig cfg;
      cfg.base_url = base_url;
      if (const char* key = std::getenv("ETHERSCAN_API_KEY")) cfg.api_key = key;
      cfg.max_requests_per_second = rps;
      cfg.max_events_per_pool = max_events;
      cfg.validate();
      SystemClock clock;
      std::unique_ptr<Transport> transport;
      if (!transcript.empty()) transport = MockTransport::from_file(transcript, clock);
      else {
        if (cfg.api_key.empty()) throw UsageError("set ETHERSCAN_API_KEY (or pass --transcript for offline replay)");
        transport = std::make_unique<HttpTransport>(cfg.base_url);
      }
      EtherscanClient client(cfg, *transport, clock);
      auto d = fetch_dataset(client, Address::parse(factory), from, to, Address::parse(wrapped_native), chain_id);
      save_dataset(d, ingest_out);
      std::cout << "saved " << d.pools.size() << " pools, " << d.events.size() << " events, " << d.transfers.size()
                << " transfers, " << d.contracts.size() << " contracts to " << ingest_out << "\n";
      return 0;
    }
    if (*synth) {
      stage_name = "synth";
      auto spec = PlantSpec::load(synth_spec);
      if (synth_seed) spec.seed = *synth_seed;
      auto [d, truth] = generate(spec);
      save_dataset(d, synth_out);
      if (!truth_out.empty()) {
        std::ofstream t(truth_out);
        t << truth.to_json().dump(2) << "\n";
      }
      std::cout << "planted " << truth.scam_pools.size() << " scam pools, " << truth.stars.size() << " stars, "
                << truth.chains.size() << " chains, " << truth.flows.size() << " flows, " << truth.clusters.size()
                << " clusters into " << synth_out << "\n";
      return 0;
    }
    if (*scan_cmd) {
      stage_name = "scan";
      Analysis a(scan_o.resolve());
      require_dataset(a.config());
      write_stage(out_or(scan_out, a.config(), "scan.jsonl"), "scan", a, stages::scan_records(a));
      return 0;
    }
    if (*pat_cmd) {
      stage_name = "patterns";
      Analysis a(pat_o.resolve());
      require_dataset(a.config());
      write_stage(out_or(pat_out, a.config(), "patterns.jsonl"), "patterns", a,
                  stages::pattern_records(a, stages::PatternKinds::parse(kinds)));
      return 0;
    }
    if (*cl_cmd) {
      stage_name = "clusters";
      Analysis a(cl_o.resolve());
      require_dataset(a.config());
      auto recs = stages::cluster_records(a);
      write_stage(out_or(cl_out, a.config(), "clusters.jsonl"), "clusters", a, recs);
      if (!cl_dot.empty())
        for (const auto& r : recs) {
          auto j = nlohmann::json::parse(r.dump());
          report::write_text(fs::path(cl_dot) / ("cluster_" + std::to_string(j["id"].get<std::size_t>()) + ".dot"),
                             dot::cluster(j));
        }
      return 0;
    }
    if (*sim_cmd) {
      stage_name = "similarity";
      auto cfg = sim_o.resolve();
      Analysis a(cfg);
      auto tcs = stage::token_clusters(stage::read_jsonl(sim_clusters).records);
      fs::path contracts_file = sim_contracts.empty() ? cfg.dataset / "contracts.jsonl" : fs::path(sim_contracts);
      LoadReport rep;
      auto contracts = io::read_lines<ContractRecord>(contracts_file, io::contract_from, LoadMode::strict, rep);
      sim::FingerprintCache cache;
      fs::path cache_path = sim_cache.empty() ? cfg.out_dir / "cache" / "fingerprints.jsonl" : fs::path(sim_cache);
      cache.load(cache_path);
      std::unique_ptr<sim::AstProvider> provider;
      if (sim_ast_dir.empty()) provider = std::make_unique<sim::BuiltinParserProvider>();
      else provider = std::make_unique<sim::JsonAstProvider>();
      if (!sim_ast_dir.empty())
        for (auto& c : contracts) {
          // swap the source for the compiler AST when one was exported
          auto f = fs::path(sim_ast_dir) / (c.address.hex() + ".json");
          if (fs::exists(f)) c.source = stage::read_file(f);
          else c.source.clear();
        }
      auto fps = sim::fingerprint_contracts(contracts, *provider, &cache);
      if (!cache_path.parent_path().empty()) fs::create_directories(cache_path.parent_path());
      cache.save(cache_path);
      auto recs = sim_mode == "intra" ? stages::intra_records(tcs, fps)
                                      : stages::inter_records(tcs, fps, stages::sampling(cfg));
      write_stage(out_or(sim_out, cfg, sim_mode == "intra" ? "similarity_intra.jsonl" : "similarity_inter.jsonl"),
                  "similarity_" + sim_mode, a, recs);
      std::cout << fps.usable.size() << " contract(s) fingerprinted, " << fps.skipped.size() << " skipped\n";
      return 0;
    }
    if (*pr_cmd) {
      stage_name = "profit";
      Analysis a(pr_o.resolve());
      require_dataset(a.config());
      if (!pr_clusters.empty()) a.adopt_clusters(stage::clusters_from(stage::read_jsonl(pr_clusters).records));
      auto recs = stages::profit_records(a, stages::parse_profit_mode(pr_mode));
      write_stage(out_or(pr_out, a.config(), "profit.jsonl"), "profit", a, recs);
      // prose-style summary
      Wei naive_sum;
      std::size_t pools = 0;
      for (const auto& r : recs)
        if (r.value("kind", "") == "pool") naive_sum += Wei::parse(r["delta_naive"].get<std::string>()), ++pools;
      if (pools)
        std::cout << "pools: " << pools << "  average naive pool profit: "
                  << report::fixed(naive_sum.ether() / static_cast<double>(pools), 4) << "\n";
      for (const auto& r : recs) {
        if (r.value("summary", "") != "profit") continue;
        auto pct = [](const stage::ojson& v) { return v.is_number() ? report::fixed(v.get<double>(), 2) + "%" : "n/a"; };
        std::cout << "clusters: " << r["clusters"].get<std::size_t>() << "  pools in clusters: "
                  << r["pools"].get<std::size_t>() << "\n"
                  << "average pool profit     naive " << report::fixed(r["avg_pool_naive"].get<double>(), 4)
                  << "  cluster-aware " << report::fixed(r["avg_pool_cluster"].get<double>(), 4) << "  inflation "
                  << pct(r["pool_inflation_pct"]) << "\n"
                  << "average cluster profit  naive " << report::fixed(r["avg_cluster_naive"].get<double>(), 4)
                  << "  cluster-aware " << report::fixed(r["avg_cluster_aware"].get<double>(), 4) << "  inflation "
                  << pct(r["cluster_inflation_pct"]) << "\n"
                  << "clusters with wash trading: "
                  << report::fixed(r["wash_cluster_share"].get<double>() * 100.0, 1) << "%\n";
      }
      return 0;
    }
    if (*net_cmd) {
      stage_name = "networks";
      auto cfg = net_o.resolve();
      if (!net_policy.empty()) {
        auto pol = PipelineConfig::load(net_policy);
        cfg.ell = pol.ell;
        cfg.big_l = pol.big_l;
        cfg.filter_poisoning = pol.filter_poisoning;
        cfg.token_transfer_edges = pol.token_transfer_edges;
        cfg.dust_ceiling = pol.dust_ceiling;
        if (pol.public_labels && !net_o.public_labels) cfg.public_labels = pol.public_labels;
        if (!net_o.max_nodes) cfg.max_nodes = pol.max_nodes;
        cfg.validate();
      }
      Analysis a(cfg);
      require_dataset(cfg);
      if (!net_clusters.empty()) a.adopt_clusters(stage::clusters_from(stage::read_jsonl(net_clusters).records));
      auto recs = stages::network_records(a, cfg.max_nodes, net_cluster);
      write_stage(out_or(net_out, cfg, "networks.jsonl"), "networks", a, recs);
      for (const auto& r : recs) {
        auto j = nlohmann::json::parse(r.dump());
        std::string id = j["cluster"].is_null() ? "x" : std::to_string(j["cluster"].get<std::size_t>());
        std::cout << "cluster " << id << ": " << j["nodes"].size() << " nodes, " << j["edges"].size() << " edges"
                  << (j["budget_exceeded"].get<bool>() ? " (node budget reached)" : "") << ", profit naive "
                  << ether4(Wei::parse(j["profit_naive"].get<std::string>())) << " network-aware "
                  << ether4(Wei::parse(j["profit_network"].get<std::string>())) << "\n";
        if (net_dot.empty()) continue;
        fs::path target = net_dot;
        if (recs.size() > 1 || fs::is_directory(target)) target /= "network_" + id + ".dot";
        report::write_text(target, dot::network(j, "network_" + id));
      }
      return 0;
    }
    if (*rep_cmd) {
      stage_name = "report";
      auto cfg = rep_o.resolve();
      fs::path dir = rep_stages.empty() ? cfg.out_dir : fs::path(rep_stages);
      fs::path out = rep_out.empty() ? dir / "report" : fs::path(rep_out);
      auto files = report::emit_report(report::StageRecords::load(dir), out, stage::provenance(cfg));
      std::cout << "wrote " << files.size() << " report file(s) to " << out.string() << "\n";
      return 0;
    }
    if (*pipe_cmd) {
      stage_name = "pipeline";
      auto cfg = pipe_o.resolve();
      return run_pipeline(cfg, std::cout).exit_code;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << stage_name << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
