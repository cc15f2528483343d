#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scamgraph/cluster/builder.hpp"
#include "scamgraph/network/network.hpp"
#include "scamgraph/patterns/chains.hpp"
#include "scamgraph/patterns/major_flow.hpp"
#include "scamgraph/patterns/stars.hpp"
#include "scamgraph/profit/profit.hpp"
#include "scamgraph/report/config.hpp"
#include "scamgraph/rugpull/detector.hpp"
#include "scamgraph/similarity/scoring.hpp"

// Stage files are JSONL. The first line is {"header": {...}} carrying the stage
// name, the config hash, the dataset hashes and the thresholds; every other
// line is one record. Amounts are decimal wei strings.

namespace scamgraph::stage {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

inline constexpr int kFormat = 1;

struct Provenance {
  std::string config_hash;
  std::string manifest_hash;
  std::string dataset_hash;
  ojson thresholds;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Manifest hash covers manifest.json; dataset hash covers it plus every entity file.
inline Provenance provenance(const PipelineConfig& cfg) {
  Provenance p;
  p.config_hash = cfg.hash();
  p.manifest_hash = Keccak256::digest(read_file(cfg.dataset / "manifest.json")).hex();
  Keccak256 k;
  for (const char* f : {"manifest.json", "transfers.jsonl", "events.jsonl", "pools.jsonl", "contracts.jsonl"}) {
    std::string body = read_file(cfg.dataset / f);
    k.update(std::string_view(f));
    k.update(std::string_view("\0", 1));
    k.update(std::to_string(body.size()));
    k.update(std::string_view("\0", 1));
    k.update(body);
  }
  p.dataset_hash = k.finish().hex();
  p.thresholds = cfg.canonical();
  return p;
}

inline ojson header(const std::string& stage, const Provenance& p) {
  ojson h;
  h["stage"] = stage;
  h["format"] = kFormat;
  h["config_hash"] = p.config_hash;
  h["manifest_hash"] = p.manifest_hash;
  h["dataset_hash"] = p.dataset_hash;
  h["thresholds"] = p.thresholds;
  return ojson{{"header", h}};
}

/// Text header for CSV and markdown outputs.
inline std::string comment_header(const std::string& stage, const Provenance& p, const std::string& lead = "# ") {
  return lead + "stage=" + stage + " config_hash=" + p.config_hash + " manifest_hash=" + p.manifest_hash +
         " dataset_hash=" + p.dataset_hash + "\n" + lead + "thresholds=" + p.thresholds.dump() + "\n";
}

inline void write_jsonl(const std::filesystem::path& path, const std::string& stage, const Provenance& p,
                        const std::vector<ojson>& records) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  // write to a side file first so a crash never leaves a half stage that looks complete
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path.string());
    out << header(stage, p).dump() << '\n';
    for (const auto& r : records) out << r.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

struct StageFile {
  json header;
  std::vector<json> records;
};

inline StageFile read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open " + path.string());
  StageFile f;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::CorruptLine, path.filename().string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (lineno == 1 && j.contains("header")) f.header = j["header"];
    else f.records.push_back(std::move(j));
  }
  return f;
}

/// True when the file exists and was produced from the same config and data.
inline bool up_to_date(const std::filesystem::path& path, const std::string& stage, const Provenance& p) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::string first;
  if (!std::getline(in, first)) return false;
  return first == header(stage, p).dump();
}

// ---------------------------------------------------------------- records

inline ojson addresses(const std::vector<Address>& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(x.hex());
  return a;
}

inline ojson scam_record(const ScanResult& scan, std::size_t i) {
  const auto& r = scan.scams[i];
  ojson j;
  j["pool"] = r.pool.hex();
  j["token"] = r.scam_token.hex();
  j["token_creator"] = r.token_creator.hex();
  j["pool_creator"] = r.pool_creator.hex();
  j["liquidity_provider"] = r.liquidity_provider.hex();
  j["liquidity_remover"] = r.liquidity_remover.hex();
  j["scammers"] = addresses(scan.pool_scammers[i]);
  j["mint_time"] = r.mint_event.timestamp;
  j["burn_time"] = r.burn_event.timestamp;
  j["lifetime_seconds"] = r.lifetime_seconds;
  j["native_added"] = r.native_added.str();
  j["native_removed"] = r.native_removed.str();
  return j;
}

inline ojson scan_summary(const ScanResult& scan) {
  ojson j;
  j["summary"] = "scan";
  j["pools_total"] = scan.pools_total;
  j["pools_native"] = scan.pools_scanned_native;
  j["scam_pools"] = scan.scams.size();
  j["scammers"] = scan.scammers.size();
  j["exclusion_hits"] = scan.exclusion_hits;
  std::map<std::string, std::size_t> reasons;
  for (const auto& [pool, r] : scan.rejected) ++reasons[to_string(r)];
  ojson rj = ojson::object();
  for (const auto& [k, v] : reasons) rj[k] = v;
  j["rejected"] = rj;
  return j;
}

inline ojson star_record(const StarResult& s) {
  ojson j;
  j["kind"] = "star";
  j["star_kind"] = to_string(s.kind);
  j["center"] = s.center.hex();
  j["center_is_scammer"] = s.center_is_scammer;
  j["members"] = addresses(s.satellites);
  j["size"] = s.satellites.size();
  j["fund_in"] = s.fund_in.str();
  j["fund_out"] = s.fund_out.str();
  j["period_seconds"] = s.period_seconds;
  j["scam_count"] = s.scam_count;
  return j;
}

inline ojson chain_record(const ChainResult& c) {
  ojson j;
  j["kind"] = "chain";
  j["members"] = addresses(c.members);
  j["size"] = c.members.size();
  ojson links = ojson::array();
  Wei total;
  for (auto* t : c.link_transfers) {
    links.push_back(t->tx_hash.hex());
    total += t->value;
  }
  j["link_txs"] = links;
  j["link_total"] = total.str();
  j["link_average"] = c.average_transfer().str();
  j["period_seconds"] = c.period_seconds;
  j["scam_count"] = c.scam_count;
  return j;
}

inline ojson flow_record(const MajorFlowResult& f) {
  ojson j;
  j["kind"] = "flow";
  j["members"] = addresses(f.vertices);
  j["size"] = f.size();
  j["width"] = f.width;
  j["minimal_flows"] = f.minimal_flows;
  ojson roles = ojson::object();
  for (const auto& [a, r] : f.roles) roles[a.hex()] = to_string(r);
  j["roles"] = roles;
  j["edges"] = f.edges.size();
  j["fund_in"] = f.fund_in.str();
  j["fund_out"] = f.fund_out.str();
  j["period_seconds"] = f.period_seconds;
  j["scam_count"] = f.scam_count;
  return j;
}

inline ojson cluster_record(const ScamCluster& c, const ScanResult& scan) {
  ojson j;
  j["id"] = c.id;
  j["members"] = addresses(c.members);
  j["size"] = c.members.size();
  j["pools"] = addresses(c.pools);
  std::vector<Address> tokens;
  for (const auto& p : c.pools)
    if (const auto* r = scan.find(p)) tokens.push_back(r->scam_token);
  j["tokens"] = addresses(tokens);
  ojson edges = ojson::array();
  for (const auto& e : c.edges) edges.push_back(ojson::array({e.a.hex(), e.b.hex(), to_string(e.kind)}));
  j["edges"] = edges;
  j["flagged_transfers"] = c.flagged_transfers;
  j["pattern_count"] = c.pattern_count;
  return j;
}

/// Cluster records back into clusters; members, pools and edges are restored.
inline ClusterSet clusters_from(const std::vector<json>& records) {
  ClusterSet set;
  for (const auto& r : records) {
    if (!r.contains("id") || !r.contains("members")) continue;
    ScamCluster c;
    c.id = r.at("id").get<std::size_t>();
    for (const auto& m : r.at("members")) c.members.push_back(Address::parse(m.get<std::string>()));
    for (const auto& p : r.value("pools", json::array())) c.pools.push_back(Address::parse(p.get<std::string>()));
    for (const auto& e : r.value("edges", json::array()))
      c.edges.push_back({Address::parse(e.at(0).get<std::string>()), Address::parse(e.at(1).get<std::string>()),
                         e.at(2).get<std::string>() == "co_pool" ? ClusterEdgeKind::co_pool : ClusterEdgeKind::transfer});
    for (const auto& f : r.value("flagged_transfers", json::array())) c.flagged_transfers.push_back(f.get<std::uint32_t>());
    c.pattern_count = r.value("pattern_count", std::size_t{0});
    std::sort(c.members.begin(), c.members.end());
    std::sort(c.pools.begin(), c.pools.end());
    set.clusters.push_back(std::move(c));
  }
  std::sort(set.clusters.begin(), set.clusters.end(), [](auto& a, auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < set.clusters.size(); ++i)
    if (set.clusters[i].id != i) throw Error(ErrorCode::MalformedData, "cluster ids must be 0..n-1");
  set.reindex();
  return set;
}

inline std::vector<sim::TokenCluster> token_clusters(const std::vector<json>& records) {
  std::vector<sim::TokenCluster> out;
  for (const auto& r : records) {
    if (!r.contains("id")) continue;
    sim::TokenCluster tc;
    tc.id = std::to_string(r.at("id").get<std::size_t>());
    for (const auto& t : r.value("tokens", json::array())) tc.tokens.push_back(Address::parse(t.get<std::string>()));
    out.push_back(std::move(tc));
  }
  return out;
}

inline ojson pool_profit_record(const PoolProfitReport& p) {
  ojson j;
  j["pool"] = p.pool.hex();
  j["x_naive"] = p.x_naive.str();
  j["y_naive"] = p.y_naive.str();
  j["delta_naive"] = p.delta_naive.str();
  if (p.has_cluster) {
    j["x_cluster"] = p.x_cluster.str();
    j["y_cluster"] = p.y_cluster.str();
    j["z_wash"] = p.z_wash.str();
    j["delta_cluster"] = p.delta_cluster.str();
  }
  return j;
}

inline ojson cluster_profit_record(const ClusterProfitReport& r) {
  ojson j;
  j["cluster"] = r.cluster_id;
  j["naive_total"] = r.naive_total.str();
  j["t_c"] = r.t_c.str();
  j["total"] = r.total.str();
  j["has_wash"] = r.has_wash;
  ojson pools = ojson::array();
  for (const auto& p : r.pools) pools.push_back(pool_profit_record(p));
  j["pools"] = pools;
  return j;
}

inline ojson inflation_record(const InflationSummary& s) {
  ojson j;
  j["summary"] = "profit";
  j["pools"] = s.pools;
  j["clusters"] = s.clusters;
  j["avg_pool_naive"] = s.avg_pool_naive;
  j["avg_pool_cluster"] = s.avg_pool_cluster;
  j["avg_cluster_naive"] = s.avg_cluster_naive;
  j["avg_cluster_aware"] = s.avg_cluster_aware;
  j["wash_cluster_share"] = s.wash_cluster_share;
  j["pool_inflation_pct"] = s.pool_inflation_pct ? ojson(*s.pool_inflation_pct) : ojson();
  j["cluster_inflation_pct"] = s.cluster_inflation_pct ? ojson(*s.cluster_inflation_pct) : ojson();
  return j;
}

inline ojson network_record(const ScamNetwork& net, const NetworkProfitReport& profit, const DatasetSnapshot& snap) {
  ojson j;
  j["cluster"] = net.seed_cluster ? ojson(*net.seed_cluster) : ojson();
  j["seeds"] = addresses(net.seeds);
  j["budget_exceeded"] = net.budget_exceeded;
  ojson nodes = ojson::array();
  for (const auto& n : net.nodes) {
    ojson nj;
    nj["address"] = n.address.hex();
    ojson roles = ojson::array();
    for (auto r : n.role.roles) roles.push_back(to_string(r));
    nj["roles"] = roles;
    nj["evidence"] = n.role.evidence;
    if (!n.public_label.empty()) nj["public_label"] = n.public_label;
    nj["expanded"] = n.expanded;
    nj["depth"] = n.depth;
    nodes.push_back(nj);
  }
  j["nodes"] = nodes;
  ojson edges = ojson::array();
  for (const auto& e : net.edges) {
    const auto& t = snap.transfers()[e.transfer];
    edges.push_back(ojson{{"from", t.sender.hex()}, {"to", t.receiver.hex()}, {"value", t.value.str()},
                          {"tx", t.tx_hash.hex()}, {"via", e.via.hex()}});
  }
  j["edges"] = edges;
  ojson trunc = ojson::object();
  for (const auto& [r, n] : net.truncation_counts()) trunc[to_string(r)] = n;
  j["truncation"] = trunc;
  j["profit_naive"] = profit.naive_total.str();
  j["profit_network"] = profit.total.str();
  j["t_network"] = profit.t_network.str();
  return j;
}

}  // namespace scamgraph::stage
