#pragma once

#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "scamgraph/cluster/builder.hpp"
#include "scamgraph/rugpull/detector.hpp"

namespace scamgraph {

struct PoolProfitReport {
  Address pool;
  Wei x_naive, y_naive;
  Wei x_cluster, y_cluster, z_wash;
  Wei delta_naive, delta_cluster;
  bool has_cluster = false;
};

struct ClusterProfitReport {
  std::size_t cluster_id = 0;
  std::vector<PoolProfitReport> pools;
  Wei naive_total;  // sum of per-pool naive deltas, for comparison only
  Wei t_c;          // fees of native transfers between members
  Wei total;        // sum of per-pool cluster deltas minus t_c
  bool has_wash = false;
};

namespace detail {

struct PoolLegs {
  Wei paid;    // native paid in plus fees
  Wei gained;  // native taken out minus fees
  Wei swap_in_by_outsiders;
};

/// Sums one pool's legs over the actors accepted by `member`. A fee is charged
/// once per transaction hash.
template <class Member, class Role>
PoolLegs pool_legs(const DatasetSnapshot& snap, const Address& pool, Member member, Role is_role) {
  PoolLegs legs;
  auto idx = snap.pool_index(pool);
  if (!idx) return legs;
  std::set<TxHash> charged;
  for (const auto& e : snap.events_of(*idx)) {
    if (e.kind == PoolEventKind::lp_transfer || !member(e.actor)) continue;
    bool pays = e.kind == PoolEventKind::mint || (e.kind == PoolEventKind::swap && e.amount_native > Wei(0));
    Wei fee = charged.insert(e.tx_hash).second ? e.gas_fee : Wei(0);
    if (pays) {
      legs.paid += e.amount_native + fee;
      if (e.kind == PoolEventKind::swap && !is_role(e.actor)) legs.swap_in_by_outsiders += e.amount_native;
    } else {
      Wei out = e.kind == PoolEventKind::swap ? -e.amount_native : e.amount_native;
      legs.gained += out - fee;
    }
  }
  return legs;
}

}  // namespace detail

/// Profit as seen from the pool's own scammer addresses only.
inline PoolProfitReport naive_profit(const ScanResult& scan, std::size_t scam_idx, const DatasetSnapshot& snap) {
  const auto& roles = scan.pool_scammers[scam_idx];
  auto in_roles = [&](const Address& a) { return std::find(roles.begin(), roles.end(), a) != roles.end(); };
  auto legs = detail::pool_legs(snap, scan.scams[scam_idx].pool, in_roles, in_roles);
  PoolProfitReport r;
  r.pool = scan.scams[scam_idx].pool;
  r.x_naive = legs.paid;
  r.y_naive = legs.gained;
  r.delta_naive = r.y_naive - r.x_naive;
  return r;
}

/// Profit where every member of `members` counts as the scammer's side.
/// Throws PoolNotInCluster unless the pool's scammers all belong to the set.
template <class MemberSet>
PoolProfitReport group_aware_profit(const ScanResult& scan, std::size_t scam_idx, const MemberSet& members,
                                    const DatasetSnapshot& snap, bool require_roles = true) {
  const auto& roles = scan.pool_scammers[scam_idx];
  if (require_roles)
    for (const auto& a : roles)
      if (!members.contains(a))
        throw Error(ErrorCode::PoolNotInCluster, "pool " + scan.scams[scam_idx].pool.hex() + " scammer " + a.hex());
  PoolProfitReport r = naive_profit(scan, scam_idx, snap);
  auto in_roles = [&](const Address& a) { return std::find(roles.begin(), roles.end(), a) != roles.end(); };
  auto legs = detail::pool_legs(
      snap, r.pool, [&](const Address& a) { return members.contains(a) || in_roles(a); }, in_roles);
  r.x_cluster = legs.paid;
  r.y_cluster = legs.gained;
  r.z_wash = legs.swap_in_by_outsiders;
  r.delta_cluster = r.y_cluster - r.x_cluster;
  r.has_cluster = true;
  return r;
}

inline PoolProfitReport cluster_aware_profit(const ScanResult& scan, std::size_t scam_idx, const ScamCluster& cluster,
                                             const DatasetSnapshot& snap) {
  struct View {
    const ScamCluster* c;
    bool contains(const Address& a) const { return c->contains(a); }
  };
  return group_aware_profit(scan, scam_idx, View{&cluster}, snap);
}

/// Fees paid on native transfers whose both endpoints are in the set.
template <class MemberSet>
Wei internal_transfer_fees(const std::vector<Address>& members, const MemberSet& set, const DatasetSnapshot& snap) {
  Wei fees;
  for (const auto& m : members) {
    auto* ix = snap.index(m);
    if (!ix) continue;
    for (auto i : ix->out_transfers) {
      const auto& t = snap.transfers()[i];
      if (t.receiver != t.sender && set.contains(t.receiver)) fees += t.gas_fee;
    }
  }
  return fees;
}

inline ClusterProfitReport cluster_total_profit(const ScamCluster& cluster, const ScanResult& scan,
                                                const DatasetSnapshot& snap) {
  ClusterProfitReport r;
  r.cluster_id = cluster.id;
  for (const auto& pool : cluster.pools) {
    auto idx = scan.find_index(pool);
    if (!idx) continue;
    auto pr = cluster_aware_profit(scan, *idx, cluster, snap);
    r.naive_total += pr.delta_naive;
    r.total += pr.delta_cluster;
    r.has_wash = r.has_wash || pr.z_wash > Wei(0);
    r.pools.push_back(pr);
  }
  struct View {
    const ScamCluster* c;
    bool contains(const Address& a) const { return c->contains(a); }
  };
  r.t_c = internal_transfer_fees(cluster.members, View{&cluster}, snap);
  r.total -= r.t_c;
  return r;
}

struct InflationSummary {
  std::size_t pools = 0;
  std::size_t clusters = 0;
  double avg_pool_naive = 0;       // native units
  double avg_pool_cluster = 0;
  double avg_cluster_naive = 0;
  double avg_cluster_aware = 0;
  double wash_cluster_share = 0;   // fraction of clusters with any wash swap-in
  std::optional<double> pool_inflation_pct;
  std::optional<double> cluster_inflation_pct;
};

inline InflationSummary inflation_summary(const std::vector<ClusterProfitReport>& reports) {
  InflationSummary s;
  Wei pn, pc, cn, ca;
  std::size_t wash = 0;
  for (const auto& r : reports) {
    ++s.clusters;
    cn += r.naive_total;
    ca += r.total;
    wash += r.has_wash;
    for (const auto& p : r.pools) {
      ++s.pools;
      pn += p.delta_naive;
      pc += p.delta_cluster;
    }
  }
  auto pct = [](Wei naive, Wei aware) -> std::optional<double> {
    if (naive == aware) return 0.0;
    if (aware.is_zero()) return std::nullopt;
    double a = aware.ether();
    return (naive.ether() - a) / (a < 0 ? -a : a) * 100.0;
  };
  if (s.pools) {
    s.avg_pool_naive = pn.ether() / static_cast<double>(s.pools);
    s.avg_pool_cluster = pc.ether() / static_cast<double>(s.pools);
  }
  if (s.clusters) {
    s.avg_cluster_naive = cn.ether() / static_cast<double>(s.clusters);
    s.avg_cluster_aware = ca.ether() / static_cast<double>(s.clusters);
    s.wash_cluster_share = static_cast<double>(wash) / static_cast<double>(s.clusters);
  }
  s.pool_inflation_pct = pct(pn, pc);
  s.cluster_inflation_pct = pct(cn, ca);
  return s;
}

}  // namespace scamgraph
