#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scamgraph/report/dot.hpp"
#include "scamgraph/report/stage_io.hpp"

namespace scamgraph::report {

using nlohmann::json;

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

/// "max;avg" as in the published tables; "-" for an empty column.
inline std::string max_avg(const std::vector<double>& v, int decimals) {
  if (v.empty()) return "-";
  double mx = *std::max_element(v.begin(), v.end());
  double sum = 0;
  for (double x : v) sum += x;
  return fixed(mx, decimals) + ";" + fixed(sum / static_cast<double>(v.size()), decimals);
}

inline double ether(const json& s) { return Wei::parse(s.get<std::string>()).ether(); }
inline double days(const json& s) { return s.get<double>() / static_cast<double>(kDaySeconds); }

/// Scores rounded to the nearest 1/bins; bin k stands for the value k/bins,
/// so identical scores of 1.0 land in the single bin at 1.00.
inline std::vector<std::size_t> histogram(const std::vector<double>& scores, std::size_t bins = 20) {
  std::vector<std::size_t> h(bins + 1, 0);
  for (double s : scores) {
    double c = std::clamp(s, 0.0, 1.0);
    ++h[static_cast<std::size_t>(std::llround(c * static_cast<double>(bins)))];
  }
  return h;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string o;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        bool quote = cells[i].find_first_of(",;\"") != std::string::npos;
        std::string c = cells[i];
        if (quote) {
          std::string q = "\"";
          for (char ch : c) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          c = q + "\"";
        }
        o += (i ? "," : "") + c;
      }
      o += "\n";
    };
    line(columns);
    for (const auto& r : rows) line(r);
    return o;
  }

  std::string markdown() const {
    std::string o = "|";
    for (const auto& c : columns) o += " " + c + " |";
    o += "\n|";
    for (std::size_t i = 0; i < columns.size(); ++i) o += "---|";
    o += "\n";
    for (const auto& r : rows) {
      o += "|";
      for (const auto& c : r) o += " " + c + " |";
      o += "\n";
    }
    return o;
  }
};

inline std::vector<json> of_kind(const std::vector<json>& records, const std::string& kind) {
  std::vector<json> out;
  for (const auto& r : records)
    if (r.value("kind", "") == kind) out.push_back(r);
  return out;
}

inline Table star_table(const std::vector<json>& patterns) {
  Table t{{"type", "count", "size", "fund_in", "fund_out", "period_days", "scams"}, {}};
  auto stars = of_kind(patterns, "star");
  for (std::string k : {"in", "out", "in_out"}) {
    std::vector<double> size, fin, fout, per, scams;
    for (const auto& s : stars) {
      if (s.at("star_kind") != k) continue;
      size.push_back(s.at("size").get<double>());
      fin.push_back(ether(s.at("fund_in")));
      fout.push_back(ether(s.at("fund_out")));
      per.push_back(days(s.at("period_seconds")));
      scams.push_back(s.at("scam_count").get<double>());
    }
    t.rows.push_back({k, std::to_string(size.size()), max_avg(size, 1), max_avg(fin, 4), max_avg(fout, 4),
                      max_avg(per, 2), max_avg(scams, 1)});
  }
  return t;
}

inline Table chain_table(const std::vector<json>& patterns) {
  Table t{{"count", "length", "avg_transfer", "period_days", "scams"}, {}};
  std::vector<double> len, avg, per, scams;
  for (const auto& c : of_kind(patterns, "chain")) {
    len.push_back(c.at("size").get<double>());
    avg.push_back(ether(c.at("link_average")));
    per.push_back(days(c.at("period_seconds")));
    scams.push_back(c.at("scam_count").get<double>());
  }
  t.rows.push_back({std::to_string(len.size()), max_avg(len, 1), max_avg(avg, 4), max_avg(per, 2), max_avg(scams, 1)});
  return t;
}

inline Table flow_table(const std::vector<json>& patterns) {
  Table t{{"count", "size", "width", "fund_in", "fund_out", "period_days", "scams"}, {}};
  std::vector<double> size, width, fin, fout, per, scams;
  for (const auto& f : of_kind(patterns, "flow")) {
    size.push_back(f.at("size").get<double>());
    width.push_back(f.at("width").get<double>());
    fin.push_back(ether(f.at("fund_in")));
    fout.push_back(ether(f.at("fund_out")));
    per.push_back(days(f.at("period_seconds")));
    scams.push_back(f.at("scam_count").get<double>());
  }
  t.rows.push_back({std::to_string(size.size()), max_avg(size, 1), max_avg(width, 1), max_avg(fin, 4),
                    max_avg(fout, 4), max_avg(per, 2), max_avg(scams, 1)});
  return t;
}

inline Table profit_table(const std::vector<json>& profits) {
  Table t{{"cluster", "pools", "naive_total", "aware_total", "t_c", "wash"}, {}};
  for (const auto& r : profits) {
    if (!r.contains("cluster")) continue;
    t.rows.push_back({std::to_string(r.at("cluster").get<std::size_t>()), std::to_string(r.at("pools").size()),
                      fixed(ether(r.at("naive_total")), 4), fixed(ether(r.at("total")), 4), fixed(ether(r.at("t_c")), 4),
                      r.at("has_wash").get<bool>() ? "yes" : "no"});
  }
  return t;
}

inline Table histogram_table(const std::vector<double>& scores, std::size_t bins = 20) {
  Table t{{"bin", "count"}, {}};
  auto h = histogram(scores, bins);
  for (std::size_t k = 0; k < h.size(); ++k)
    t.rows.push_back({fixed(static_cast<double>(k) / static_cast<double>(bins), 2), std::to_string(h[k])});
  return t;
}

inline std::vector<double> scores_of(const std::vector<json>& records) {
  std::vector<double> out;
  for (const auto& r : records)
    if (r.contains("score") && r["score"].is_number()) out.push_back(r["score"].get<double>());
  return out;
}

inline std::optional<json> summary(const std::vector<json>& records, const std::string& name) {
  for (const auto& r : records)
    if (r.value("summary", "") == name) return r;
  return std::nullopt;
}

/// Stage records available to the report; absent stages stay empty.
struct StageRecords {
  std::vector<json> scan, patterns, clusters, intra, inter, profit, networks;

  static StageRecords load(const std::filesystem::path& dir) {
    StageRecords s;
    auto get = [&](const char* f) {
      auto p = dir / f;
      return std::filesystem::exists(p) ? stage::read_jsonl(p).records : std::vector<json>{};
    };
    s.scan = get("scan.jsonl");
    s.patterns = get("patterns.jsonl");
    s.clusters = get("clusters.jsonl");
    s.intra = get("similarity_intra.jsonl");
    s.inter = get("similarity_inter.jsonl");
    s.profit = get("profit.jsonl");
    s.networks = get("networks.jsonl");
    return s;
  }
};

inline void write_text(const std::filesystem::path& p, const std::string& body) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + p.string());
  out << body;
}

/// Writes report.md, one CSV per table, histogram bin files and one DOT file
/// per network and cluster under out/report. Returns the files written.
inline std::vector<std::filesystem::path> emit_report(const StageRecords& s, const std::filesystem::path& out,
                                                      const stage::Provenance& prov) {
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& name, const std::string& body, const std::string& lead = "# ") {
    auto p = out / name;
    write_text(p, stage::comment_header("report", prov, lead) + body);
    written.push_back(p);
  };
  auto stars = star_table(s.patterns);
  auto chains = chain_table(s.patterns);
  auto flows = flow_table(s.patterns);
  auto profits = profit_table(s.profit);
  auto intra_scores = scores_of(s.intra);
  auto inter_scores = scores_of(s.inter);
  auto intra_hist = histogram_table(intra_scores);
  auto inter_hist = histogram_table(inter_scores);
  put("stars.csv", stars.csv());
  put("chains.csv", chains.csv());
  put("flows.csv", flows.csv());
  put("profit.csv", profits.csv());
  put("similarity_intra_hist.csv", intra_hist.csv());
  put("similarity_inter_hist.csv", inter_hist.csv());

  std::string md = "# Scam analysis report\n\n";
  if (auto sc = summary(s.scan, "scan")) {
    md += "## Rug pulls\n\n";
    md += "- pools: " + std::to_string(sc->value("pools_total", 0)) + " (" + std::to_string(sc->value("pools_native", 0)) +
          " native)\n";
    md += "- one-day rug pulls: " + std::to_string(sc->value("scam_pools", 0)) + "\n";
    md += "- scammer addresses: " + std::to_string(sc->value("scammers", 0)) + "\n\n";
  }
  md += "## Stars\n\nmax;avg per column, amounts in native units\n\n" + stars.markdown() + "\n";
  md += "## Chains\n\n" + chains.markdown() + "\n";
  md += "## Major flows\n\n" + flows.markdown() + "\n";
  md += "## Clusters\n\n- clusters: " + std::to_string(s.clusters.size()) + "\n";
  std::vector<double> sizes;
  for (const auto& c : s.clusters) sizes.push_back(c.at("size").get<double>());
  md += "- size max;avg: " + max_avg(sizes, 1) + "\n\n";
  md += "## Profit\n\n";
  if (auto ps = summary(s.profit, "profit")) {
    auto opt = [](const json& v) { return v.is_number() ? fixed(v.get<double>(), 2) + "%" : std::string("n/a"); };
    md += "- average pool profit: naive " + fixed(ps->value("avg_pool_naive", 0.0), 4) + ", cluster-aware " +
          fixed(ps->value("avg_pool_cluster", 0.0), 4) + " (inflation " + opt((*ps)["pool_inflation_pct"]) + ")\n";
    md += "- average cluster profit: naive " + fixed(ps->value("avg_cluster_naive", 0.0), 4) + ", cluster-aware " +
          fixed(ps->value("avg_cluster_aware", 0.0), 4) + " (inflation " + opt((*ps)["cluster_inflation_pct"]) + ")\n";
    md += "- clusters with wash trading: " + fixed(ps->value("wash_cluster_share", 0.0) * 100.0, 1) + "%\n\n";
  }
  md += profits.markdown() + "\n";
  md += "## Similarity\n\n- intra-cluster scores: " + std::to_string(intra_scores.size()) +
        "\n- inter-cluster scores: " + std::to_string(inter_scores.size()) +
        "\n\nHistogram bins are in similarity_intra_hist.csv and similarity_inter_hist.csv.\n\n";
  if (!s.networks.empty()) {
    md += "## Networks\n\n";
    Table nt{{"cluster", "nodes", "edges", "budget_exceeded", "naive", "network_aware"}, {}};
    for (const auto& n : s.networks) {
      std::string id = n["cluster"].is_null() ? "-" : std::to_string(n["cluster"].get<std::size_t>());
      nt.rows.push_back({id, std::to_string(n.at("nodes").size()), std::to_string(n.at("edges").size()),
                         n.at("budget_exceeded").get<bool>() ? "yes" : "no", fixed(ether(n.at("profit_naive")), 4),
                         fixed(ether(n.at("profit_network")), 4)});
      put("networks/network_" + id + ".dot", dot::network(n, "network_" + id), "// ");
    }
    md += nt.markdown() + "\n";
  }
  for (const auto& c : s.clusters)
    put("clusters/cluster_" + std::to_string(c.at("id").get<std::size_t>()) + ".dot", dot::cluster(c), "// ");
  put("report.md", md, "<!-- ");
  return written;
}

}  // namespace scamgraph::report
