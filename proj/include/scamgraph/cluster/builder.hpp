#pragma once

#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "scamgraph/network/poisoning.hpp"
#include "scamgraph/patterns/major_flow.hpp"
#include "scamgraph/patterns/overlap.hpp"
#include "scamgraph/rugpull/detector.hpp"

namespace scamgraph {

enum class ClusterEdgeKind { transfer, co_pool };

inline const char* to_string(ClusterEdgeKind k) { return k == ClusterEdgeKind::transfer ? "transfer" : "co_pool"; }

struct ClusterEdge {
  Address a;  // a < b
  Address b;
  ClusterEdgeKind kind = ClusterEdgeKind::transfer;
  friend auto operator<=>(const ClusterEdge&, const ClusterEdge&) = default;
};

struct ScamCluster {
  std::size_t id = 0;
  std::vector<Address> members;      // sorted
  std::vector<ClusterEdge> edges;    // sorted, unique
  std::vector<Address> pools;        // scam pools whose scammers lie inside, sorted
  std::vector<std::uint32_t> flagged_transfers;  // intra-cluster transfers that look like poisoning
  std::size_t pattern_count = 0;

  bool contains(const Address& a) const { return std::binary_search(members.begin(), members.end(), a); }
};

struct ClusterOptions {
  Wei transfer_floor;         // transfers must be strictly above this value
  std::size_t min_size = 2;
  Wei dust_ceiling = kDefaultDustCeiling;
};

class ClusterSet {
public:
  std::vector<ScamCluster> clusters;    // sorted by smallest member; id == position
  std::vector<Address> singletons;      // scammers with no qualifying edge

  std::optional<std::size_t> cluster_of(const Address& a) const {
    auto it = lookup_.find(a);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  void reindex() {
    lookup_.clear();
    for (const auto& c : clusters)
      for (const auto& m : c.members) lookup_.emplace(m, c.id);
  }

private:
  std::unordered_map<Address, std::size_t> lookup_;
};

/// Connected components over scammers linked by a direct native transfer or by
/// sharing a scam pool.
inline ClusterSet build_clusters(const ScanResult& scan, const DatasetSnapshot& snap, ClusterOptions opts = {}) {
  const auto& S = scan.scammers;
  auto pos = [&](const Address& a) -> std::optional<std::size_t> {
    auto it = std::lower_bound(S.begin(), S.end(), a);
    if (it == S.end() || *it != a) return std::nullopt;
    return static_cast<std::size_t>(it - S.begin());
  };
  detail::DisjointSets ds(S.size());
  std::set<ClusterEdge> edges;
  std::vector<std::uint32_t> transfer_edges;

  for (std::uint32_t i = 0; i < snap.transfers().size(); ++i) {
    const auto& t = snap.transfers()[i];
    if (t.sender == t.receiver || t.value <= opts.transfer_floor) continue;
    auto a = pos(t.sender), b = pos(t.receiver);
    if (!a || !b) continue;
    ds.unite(*a, *b);
    edges.insert({std::min(t.sender, t.receiver), std::max(t.sender, t.receiver), ClusterEdgeKind::transfer});
    transfer_edges.push_back(i);
  }
  for (const auto& members : scan.pool_scammers) {
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        ds.unite(*pos(members[i]), *pos(members[j]));
        edges.insert({members[i], members[j], ClusterEdgeKind::co_pool});
      }
  }

  std::map<std::size_t, std::vector<Address>> comps;
  for (std::size_t i = 0; i < S.size(); ++i) comps[ds.find(i)].push_back(S[i]);

  ClusterSet out;
  std::vector<std::vector<Address>> kept;
  for (auto& [_, m] : comps) {
    if (m.size() >= std::max<std::size_t>(opts.min_size, 2))
      kept.push_back(std::move(m));
    else if (m.size() == 1)
      out.singletons.push_back(m.front());
  }
  std::sort(kept.begin(), kept.end(), [](auto& a, auto& b) { return a.front() < b.front(); });
  std::sort(out.singletons.begin(), out.singletons.end());

  std::unordered_map<Address, std::size_t> cid;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    ScamCluster c;
    c.id = i;
    c.members = std::move(kept[i]);
    for (const auto& m : c.members) cid.emplace(m, i);
    out.clusters.push_back(std::move(c));
  }
  for (const auto& e : edges)
    if (auto it = cid.find(e.a); it != cid.end()) out.clusters[it->second].edges.push_back(e);
  for (std::size_t p = 0; p < scan.scams.size(); ++p) {
    const auto& ms = scan.pool_scammers[p];
    if (ms.empty()) continue;
    auto it = cid.find(ms.front());
    if (it == cid.end()) continue;
    out.clusters[it->second].pools.push_back(scan.scams[p].pool);
  }
  // Poisoning diagnostics: edges are kept, suspicious ones are only listed.
  std::map<Address, std::set<std::uint32_t>> flagged_cache;
  for (auto i : transfer_edges) {
    const auto& t = snap.transfers()[i];
    auto it = cid.find(t.receiver);
    if (it == cid.end()) continue;
    auto [fc, fresh] = flagged_cache.try_emplace(t.receiver);
    if (fresh) fc->second = detect_poisoning(t.receiver, snap, opts.dust_ceiling);
    if (fc->second.contains(i)) out.clusters[it->second].flagged_transfers.push_back(i);
  }
  out.reindex();
  return out;
}

struct ClusterCensus {
  std::size_t stars = 0;
  std::size_t chains = 0;
  std::size_t flows = 0;
  std::size_t total() const { return stars + chains + flows; }
};

/// Patterns lying wholly inside each cluster. Stars count when their scammer
/// members (satellites, plus a scammer center) share one cluster.
inline std::vector<ClusterCensus> cluster_pattern_census(ClusterSet& clusters, const PatternSet& patterns) {
  std::vector<ClusterCensus> census(clusters.clusters.size());
  auto home = [&](const auto& members) -> std::optional<std::size_t> {
    std::optional<std::size_t> id;
    for (const auto& m : members) {
      auto c = clusters.cluster_of(m);
      if (!c || (id && *id != *c)) return std::nullopt;
      id = c;
    }
    return id;
  };
  for (const auto& s : patterns.stars)
    if (auto id = home(star_members(s))) ++census[*id].stars;
  for (const auto& c : patterns.chains)
    if (auto id = home(c.members)) ++census[*id].chains;
  for (const auto& f : patterns.flows)
    if (auto id = home(f.vertices)) ++census[*id].flows;
  for (std::size_t i = 0; i < census.size(); ++i) clusters.clusters[i].pattern_count = census[i].total();
  return census;
}

}  // namespace scamgraph
