#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>
#include <toml.hpp>

#include "scamgraph/core/keccak.hpp"
#include "scamgraph/network/network.hpp"
#include "scamgraph/patterns/funding.hpp"
#include "scamgraph/rugpull/detector.hpp"

namespace scamgraph {

/// Every tunable constant of the analysis in one place. The canonical JSON
/// form (paths excluded) is what gets hashed and echoed into output headers.
struct PipelineConfig {
  std::filesystem::path dataset;
  std::filesystem::path out_dir = "out";
  std::optional<std::filesystem::path> exclusions;    // ExclusionList file
  std::optional<std::filesystem::path> public_labels; // network terminal labels

  // rug pulls
  Timestamp day_seconds = kDaySeconds;
  Fraction burn_share{99, 100};
  std::optional<Timestamp> inactivity_cutoff;
  // patterns
  Fraction p{9, 10};
  std::size_t star_min = 5;
  bool count_internal = true;
  bool include_own_swap_ins = false;
  // clusters
  std::size_t cluster_min_size = 2;
  Wei cluster_transfer_floor;
  Wei dust_ceiling = kDefaultDustCeiling;
  // similarity
  bool similarity = true;
  std::size_t sim_max_tokens = 100;
  std::size_t sim_partner_clusters = 500;
  std::size_t sim_repeats = 10;
  // networks
  bool networks = true;
  std::size_t ell = 500;
  std::size_t big_l = 1000;
  std::optional<std::size_t> max_nodes = 2000;
  bool filter_poisoning = true;
  bool token_transfer_edges = false;

  std::uint64_t seed = 7;

  ScanOptions scan_options() const { return {day_seconds, burn_share}; }
  FundingOptions funding_options() const {
    FundingOptions o;
    o.p = p;
    o.count_internal = count_internal;
    o.include_own_swap_ins = include_own_swap_ins;
    return o;
  }
  ClusterOptions cluster_options() const {
    ClusterOptions o;
    o.transfer_floor = cluster_transfer_floor;
    o.min_size = cluster_min_size;
    o.dust_ceiling = dust_ceiling;
    return o;
  }

  void validate() const {
    auto bad = [](const std::string& m) { throw Error(ErrorCode::InvalidConfig, m); };
    if (p.den <= 0 || p.num <= 0 || p.num > p.den) bad("p must lie in (0, 1]");
    if (burn_share.den <= 0 || burn_share.num < 0 || burn_share.num > burn_share.den) bad("burn_share must lie in [0, 1]");
    if (day_seconds <= 0) bad("day_seconds must be positive");
    if (star_min < 1) bad("star_min must be at least 1");
    if (cluster_min_size < 1) bad("cluster min_size must be at least 1");
    if (!(ell < big_l)) bad("big-node limits need ell < L");
    if (max_nodes && *max_nodes == 0) bad("max_nodes must be positive");
  }

  /// Thresholds and toggles only; paths are left out so that moving a dataset
  /// or an output directory does not change any hash.
  nlohmann::ordered_json canonical() const {
    nlohmann::ordered_json j;
    j["day_seconds"] = day_seconds;
    j["burn_share"] = burn_share.str();
    j["inactivity_cutoff"] = inactivity_cutoff ? nlohmann::ordered_json(*inactivity_cutoff) : nlohmann::ordered_json();
    j["p"] = p.str();
    j["star_min"] = star_min;
    j["count_internal"] = count_internal;
    j["include_own_swap_ins"] = include_own_swap_ins;
    j["cluster_min_size"] = cluster_min_size;
    j["cluster_transfer_floor"] = cluster_transfer_floor.str();
    j["dust_ceiling"] = dust_ceiling.str();
    j["similarity"] = similarity;
    j["sim_max_tokens"] = sim_max_tokens;
    j["sim_partner_clusters"] = sim_partner_clusters;
    j["sim_repeats"] = sim_repeats;
    j["networks"] = networks;
    j["ell"] = ell;
    j["big_l"] = big_l;
    j["max_nodes"] = max_nodes ? nlohmann::ordered_json(*max_nodes) : nlohmann::ordered_json();
    j["filter_poisoning"] = filter_poisoning;
    j["token_transfer_edges"] = token_transfer_edges;
    j["seed"] = seed;
    // list contents matter, their locations do not
    j["exclusions"] = exclusions ? nlohmann::ordered_json(file_digest(*exclusions)) : nlohmann::ordered_json();
    j["public_labels"] = public_labels ? nlohmann::ordered_json(file_digest(*public_labels)) : nlohmann::ordered_json();
    return j;
  }

  static std::string file_digest(const std::filesystem::path& f) {
    std::ifstream in(f, std::ios::binary);
    if (!in) return "missing";
    std::stringstream ss;
    ss << in.rdbuf();
    return Keccak256::digest(ss.str()).hex();
  }

  std::string hash() const { return Keccak256::digest(canonical().dump()).hex(); }

  /// Reads a TOML file. Unknown keys are errors so typos do not pass silently.
  ///
  ///   dataset = "data/run1"       out_dir = "out"
  ///   [scan]     day_seconds, burn_share ("0.99"), exclusions, inactivity_cutoff
  ///   [patterns] p ("0.9"), star_min, count_internal, include_own_swap_ins
  ///   [clusters] min_size, transfer_floor (wei), dust_ceiling (wei)
  ///   [similarity] enabled, max_tokens_per_cluster, partner_clusters, repeats
  ///   [network]  enabled, ell, big_l, max_nodes, filter_poisoning, token_transfer_edges, public_labels
  ///   seed = 7
  static PipelineConfig from_toml(std::string_view text, const std::filesystem::path& base = {}) {
    try {
      return from_toml_unchecked(text, base);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorCode::InvalidConfig, std::string("config: ") + e.what());
    }
  }

 private:
  static PipelineConfig from_toml_unchecked(std::string_view text, const std::filesystem::path& base) {
    toml::table t;
    try {
      t = toml::parse(text);
    } catch (const toml::parse_error& e) {
      throw Error(ErrorCode::InvalidConfig, std::string("config: ") + std::string(e.description()));
    }
    PipelineConfig c;
    auto path = [&](const toml::node* n) { return base / std::filesystem::path(n->value<std::string>().value()); };
    auto frac = [&](const toml::node* n, const char* k) {
      if (auto s = n->value<std::string>()) return Fraction::parse(*s);
      if (auto d = n->value<double>()) return Fraction::parse(std::to_string(*d));
      throw Error(ErrorCode::InvalidConfig, std::string("config: ") + k + " must be a decimal string");
    };
    auto wei = [&](const toml::node* n, const char* k) {
      if (auto s = n->value<std::string>()) return Wei::parse(*s);
      if (auto i = n->value<std::int64_t>()) return Wei(*i);
      throw Error(ErrorCode::InvalidConfig, std::string("config: ") + k + " must be an integer amount in wei");
    };
    auto uint = [&](const toml::node* n, const char* k) -> std::size_t {
      auto i = n->value<std::int64_t>();
      if (!i || *i < 0) throw Error(ErrorCode::InvalidConfig, std::string("config: ") + k + " must be a non-negative integer");
      return static_cast<std::size_t>(*i);
    };
    auto boolean = [&](const toml::node* n, const char* k) {
      auto b = n->value<bool>();
      if (!b) throw Error(ErrorCode::InvalidConfig, std::string("config: ") + k + " must be a boolean");
      return *b;
    };
    auto unknown = [](const std::string& where, const std::string& k) {
      throw Error(ErrorCode::InvalidConfig, "config: unknown key " + where + k);
    };
    for (auto&& [key, node] : t) {
      std::string k(key.str());
      if (k == "dataset") c.dataset = path(&node);
      else if (k == "out_dir") c.out_dir = path(&node);
      else if (k == "seed") c.seed = uint(&node, "seed");
      else if (auto* sub = node.as_table()) {
        for (auto&& [skey, sn] : *sub) {
          std::string s(skey.str());
          const toml::node* n = &sn;
          if (k == "scan") {
            if (s == "day_seconds") c.day_seconds = static_cast<Timestamp>(uint(n, "day_seconds"));
            else if (s == "burn_share") c.burn_share = frac(n, "burn_share");
            else if (s == "exclusions") c.exclusions = path(n);
            else if (s == "inactivity_cutoff") c.inactivity_cutoff = static_cast<Timestamp>(uint(n, "inactivity_cutoff"));
            else unknown("scan.", s);
          } else if (k == "patterns") {
            if (s == "p") c.p = frac(n, "p");
            else if (s == "star_min") c.star_min = uint(n, "star_min");
            else if (s == "count_internal") c.count_internal = boolean(n, "count_internal");
            else if (s == "include_own_swap_ins") c.include_own_swap_ins = boolean(n, "include_own_swap_ins");
            else unknown("patterns.", s);
          } else if (k == "clusters") {
            if (s == "min_size") c.cluster_min_size = uint(n, "min_size");
            else if (s == "transfer_floor") c.cluster_transfer_floor = wei(n, "transfer_floor");
            else if (s == "dust_ceiling") c.dust_ceiling = wei(n, "dust_ceiling");
            else unknown("clusters.", s);
          } else if (k == "similarity") {
            if (s == "enabled") c.similarity = boolean(n, "enabled");
            else if (s == "max_tokens_per_cluster") c.sim_max_tokens = uint(n, "max_tokens_per_cluster");
            else if (s == "partner_clusters") c.sim_partner_clusters = uint(n, "partner_clusters");
            else if (s == "repeats") c.sim_repeats = uint(n, "repeats");
            else unknown("similarity.", s);
          } else if (k == "network") {
            if (s == "enabled") c.networks = boolean(n, "enabled");
            else if (s == "ell") c.ell = uint(n, "ell");
            else if (s == "big_l") c.big_l = uint(n, "big_l");
            else if (s == "max_nodes") c.max_nodes = uint(n, "max_nodes");
            else if (s == "filter_poisoning") c.filter_poisoning = boolean(n, "filter_poisoning");
            else if (s == "token_transfer_edges") c.token_transfer_edges = boolean(n, "token_transfer_edges");
            else if (s == "public_labels") c.public_labels = path(n);
            else if (s == "dust_ceiling") c.dust_ceiling = wei(n, "dust_ceiling");
            else unknown("network.", s);
          } else {
            unknown("", k + "." + s);
          }
        }
      } else {
        unknown("", k);
      }
    }
    c.validate();
    return c;
  }

 public:
  static PipelineConfig load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open config " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_toml(ss.str(), file.parent_path());
  }

  /// Network terminal policy derived from the thresholds above.
  TerminalPolicy terminal_policy() const {
    TerminalPolicy tp;
    if (public_labels) tp.public_labels = TerminalPolicy::load_labels(public_labels->string());
    tp.ell = ell;
    tp.big_l = big_l;
    tp.dust_ceiling = dust_ceiling;
    tp.filter_poisoning = filter_poisoning;
    tp.token_transfer_edges = token_transfer_edges;
    tp.validate();
    return tp;
  }

  ExclusionList exclusion_list() const {
    ExclusionList l = exclusions ? ExclusionList::load(exclusions->string()) : ExclusionList{};
    l.inactivity_cutoff = inactivity_cutoff;
    return l;
  }
};

}  // namespace scamgraph
