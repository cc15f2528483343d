#pragma once

#include <deque>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "scamgraph/cluster/builder.hpp"
#include "scamgraph/network/poisoning.hpp"
#include "scamgraph/profit/profit.hpp"
#include "scamgraph/rugpull/detector.hpp"

namespace scamgraph {

enum class Role { scammer, coordinator, wash_trader, depositor, withdrawer, transferrer, boundary, unlabelled };

inline const char* to_string(Role r) {
  switch (r) {
    case Role::scammer: return "scammer";
    case Role::coordinator: return "coordinator";
    case Role::wash_trader: return "wash_trader";
    case Role::depositor: return "depositor";
    case Role::withdrawer: return "withdrawer";
    case Role::transferrer: return "transferrer";
    case Role::boundary: return "boundary";
    case Role::unlabelled: return "unlabelled";
  }
  return "unlabelled";
}

struct NodeRole {
  std::set<Role> roles;
  std::vector<std::string> evidence;  // rule ids that fired
  bool has(Role r) const { return roles.contains(r); }
};

struct TerminalPolicy {
  std::map<Address, std::string> public_labels;  // CEX, mixer, bridge, MEV, deployer, router
  std::size_t boundary_min_swap_ins = 10;
  Fraction boundary_non_scam_share{1, 2};  // strictly more than this share on non-scam pools
  std::size_t ell = 500;
  std::size_t big_l = 1000;
  std::size_t coordinator_min_scammers = 5;
  Fraction coordinator_scammer_share{1, 2};
  Fraction transferrer_forward_share{99, 100};
  Wei dust_ceiling = kDefaultDustCeiling;
  bool filter_poisoning = true;
  bool token_transfer_edges = false;  // LP/token transfers never create edges unless enabled

  bool is_public(const Address& a) const { return public_labels.contains(a); }

  void validate() const {
    if (!(ell < big_l)) throw Error(ErrorCode::InvalidConfig, "big-node limits need ell < L");
  }

  /// "address,label" or "address label" per line; '#' comments.
  static std::map<Address, std::string> parse_labels(std::istream& in) {
    std::map<Address, std::string> out;
    auto list = ExclusionList::parse(in);
    for (const auto& [a, l] : list.entries()) out.emplace(a, l);
    return out;
  }
  static std::map<Address, std::string> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open label file " + path);
    return parse_labels(in);
  }
};

enum class StopReason { public_terminal, boundary, big_node_dropped, big_node_limited, contract, node_budget };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::public_terminal: return "public_terminal";
    case StopReason::boundary: return "boundary";
    case StopReason::big_node_dropped: return "big_node";
    case StopReason::big_node_limited: return "big_node_limited";
    case StopReason::contract: return "contract";
    case StopReason::node_budget: return "node_budget";
  }
  return "public_terminal";
}

struct TruncationEntry {
  Address address;
  StopReason reason;
};

struct NetworkNode {
  Address address;
  NodeRole role;
  std::string public_label;  // non-empty for public terminals
  bool expanded = false;
  std::size_t depth = 0;
};

struct NetworkEdge {
  std::uint32_t transfer;  // index into the snapshot
  Address via;             // node being expanded when the edge was found
};

struct ScamNetwork {
  std::vector<Address> seeds;
  std::optional<std::size_t> seed_cluster;
  std::vector<NetworkNode> nodes;  // visit order
  std::vector<NetworkEdge> edges;
  std::vector<TruncationEntry> truncation;
  bool budget_exceeded = false;

  const NetworkNode* node(const Address& a) const {
    for (const auto& n : nodes)
      if (n.address == a) return &n;
    return nullptr;
  }
  std::set<Address> members() const {
    std::set<Address> out;
    for (const auto& n : nodes) out.insert(n.address);
    return out;
  }
  std::map<StopReason, std::size_t> truncation_counts() const {
    std::map<StopReason, std::size_t> out;
    for (const auto& t : truncation) ++out[t.reason];
    return out;
  }
};

/// Precomputed scam-wide facts used by the labelling rules.
class ScamContext {
public:
  ScamContext(const DatasetSnapshot& snap, const ScanResult& scan, const TerminalPolicy& policy)
      : snap_(&snap), scan_(&scan), policy_(&policy) {
    for (std::size_t i = 0; i < scan.scams.size(); ++i) scam_pools_.emplace(scan.scams[i].pool, i);
    std::map<Address, std::size_t> funded;
    for (const auto& s : scan.scammers) {
      auto in = snap.transfers_ranked(s, Direction::in);
      if (!in.empty()) ++funded[in.front()->sender];
    }
    for (const auto& [f, n] : funded) {
      if (n < policy.coordinator_min_scammers) continue;
      std::set<Address> eoa_neighbors;
      if (auto* ix = snap.index(f)) {
        for (auto i : ix->in_transfers) add_eoa(eoa_neighbors, snap.transfers()[i].sender, f);
        for (auto i : ix->out_transfers) add_eoa(eoa_neighbors, snap.transfers()[i].receiver, f);
      }
      std::size_t scammers = 0;
      for (const auto& a : eoa_neighbors) scammers += scan.is_scammer(a);
      if (!eoa_neighbors.empty() &&
          policy.coordinator_scammer_share.covered(Wei(static_cast<Wei::rep>(scammers)),
                                                   Wei(static_cast<Wei::rep>(eoa_neighbors.size()))))
        coordinators_.insert(f);
    }
  }

  const DatasetSnapshot& snapshot() const { return *snap_; }
  const ScanResult& scan() const { return *scan_; }
  const TerminalPolicy& policy() const { return *policy_; }

  bool is_scammer(const Address& a) const { return scan_->is_scammer(a); }
  bool is_coordinator(const Address& a) const { return coordinators_.contains(a); }
  bool is_scam_pool(const Address& p) const { return scam_pools_.contains(p); }
  std::optional<std::size_t> scam_index(const Address& p) const {
    auto it = scam_pools_.find(p);
    if (it == scam_pools_.end()) return std::nullopt;
    return it->second;
  }

  /// Swap-ins placed by a, split by whether the pool is a scam pool.
  std::pair<std::size_t, std::size_t> swap_ins(const Address& a) const {
    std::size_t scam = 0, other = 0;
    if (auto* ix = snap_->index(a))
      for (auto [p, e] : ix->pool_events) {
        const auto& ev = snap_->events_of(p)[e];
        if (ev.kind != PoolEventKind::swap || ev.amount_native <= Wei(0)) continue;
        (is_scam_pool(snap_->pools()[p].address) ? scam : other)++;
      }
    return {scam, other};
  }

  bool is_boundary(const Address& a) const {
    if (is_scammer(a) || is_coordinator(a)) return false;
    auto [scam, other] = swap_ins(a);
    std::size_t total = scam + other;
    if (total < policy_->boundary_min_swap_ins) return false;
    // strictly more than the share: other/total > num/den
    const auto& f = policy_->boundary_non_scam_share;
    return static_cast<std::int64_t>(other) * f.den > static_cast<std::int64_t>(total) * f.num;
  }

  const std::set<std::uint32_t>& poisoned_into(const Address& a) const {
    auto it = poison_cache_.find(a);
    if (it == poison_cache_.end()) it = poison_cache_.emplace(a, detect_poisoning(a, *snap_, policy_->dust_ceiling)).first;
    return it->second;
  }

private:
  void add_eoa(std::set<Address>& out, const Address& a, const Address& self) const {
    if (a != self && snap_->kind(a) == AccountKind::eoa) out.insert(a);
  }

  const DatasetSnapshot* snap_;
  const ScanResult* scan_;
  const TerminalPolicy* policy_;
  std::unordered_map<Address, std::size_t> scam_pools_;
  std::set<Address> coordinators_;
  mutable std::unordered_map<Address, std::set<std::uint32_t>> poison_cache_;
};

/// Labels that only need the ledger (everything except wash trading).
inline NodeRole label_node_local(const Address& a, const ScamContext& ctx) {
  NodeRole r;
  const auto& snap = ctx.snapshot();
  const auto& pol = ctx.policy();
  if (ctx.is_scammer(a)) {
    r.roles.insert(Role::scammer);
    r.evidence.push_back("S:scam-pool-role");
  }
  if (ctx.is_coordinator(a)) {
    r.roles.insert(Role::coordinator);
    r.evidence.push_back("C:largest-funder-of-5");
  }
  Wei in, out;
  bool eoa_only = true;
  if (auto* ix = snap.index(a)) {
    for (auto i : ix->in_transfers) {
      const auto& t = snap.transfers()[i];
      in += t.value;
      if (snap.kind(t.sender) != AccountKind::eoa) eoa_only = false;
      if (pol.is_public(t.sender) && !r.has(Role::withdrawer)) {
        r.roles.insert(Role::withdrawer);
        r.evidence.push_back("W:from-public");
      }
    }
    for (auto i : ix->out_transfers) {
      const auto& t = snap.transfers()[i];
      out += t.value + t.gas_fee;
      if (snap.kind(t.receiver) != AccountKind::eoa) eoa_only = false;
      if (pol.is_public(t.receiver) && !r.has(Role::depositor)) {
        r.roles.insert(Role::depositor);
        r.evidence.push_back("D:to-public");
      }
    }
    if (!ix->pool_events.empty()) eoa_only = false;
  }
  if (eoa_only && in > Wei(0) && pol.transferrer_forward_share.covered(out, in)) {
    r.roles.insert(Role::transferrer);
    r.evidence.push_back("T:forwards-99pct");
  }
  if (ctx.is_boundary(a)) {
    r.roles.insert(Role::boundary);
    r.evidence.push_back("B:mostly-non-scam-swaps");
  }
  return r;
}

namespace detail {

inline bool valid_transfer(const NativeTransfer& t, std::uint32_t idx, const ScamContext& ctx) {
  if (t.value.is_zero() || t.sender == t.receiver) return false;
  if (!ctx.policy().filter_poisoning) return true;
  return !ctx.poisoned_into(t.receiver).contains(idx);
}

}  // namespace detail

/// Breadth-first expansion from the seeds over valid neighbours, stopping at
/// public, boundary and big nodes.
inline ScamNetwork expand_network(std::vector<Address> seeds, const ScamContext& ctx,
                                  std::optional<std::size_t> max_nodes = std::nullopt) {
  const auto& snap = ctx.snapshot();
  const auto& pol = ctx.policy();
  pol.validate();
  ScamNetwork net;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  net.seeds = seeds;

  std::unordered_set<Address> seen;
  std::unordered_set<Address> rejected;
  std::deque<std::pair<Address, std::size_t>> queue;
  for (const auto& s : seeds) {
    seen.insert(s);
    queue.emplace_back(s, 0);
  }
  std::map<Address, std::vector<Address>> co_pool;
  for (std::size_t i = 0; i < ctx.scan().scams.size(); ++i) {
    const auto& ms = ctx.scan().pool_scammers[i];
    for (const auto& a : ms)
      for (const auto& b : ms)
        if (a != b) co_pool[a].push_back(b);
  }

  auto admissible = [&](const Address& a) -> std::optional<StopReason> {
    if (pol.is_public(a)) return std::nullopt;
    if (snap.kind(a) == AccountKind::contract) return StopReason::contract;
    std::size_t n = snap.tx_count(a);
    if (n > pol.big_l) return StopReason::big_node_dropped;
    if (n > pol.ell && !ctx.is_scammer(a) && !ctx.is_coordinator(a)) return StopReason::big_node_limited;
    return std::nullopt;
  };

  while (!queue.empty()) {
    auto [v, depth] = queue.front();
    queue.pop_front();
    if (max_nodes && net.nodes.size() >= *max_nodes) {
      net.budget_exceeded = true;
      net.truncation.push_back({v, StopReason::node_budget});
      for (auto& [rest, _] : queue) net.truncation.push_back({rest, StopReason::node_budget});
      break;
    }
    NetworkNode node;
    node.address = v;
    node.depth = depth;
    if (auto it = pol.public_labels.find(v); it != pol.public_labels.end()) {
      node.public_label = it->second.empty() ? "public" : it->second;
      net.truncation.push_back({v, StopReason::public_terminal});
      net.nodes.push_back(std::move(node));
      continue;
    }
    if (ctx.is_boundary(v)) {
      net.truncation.push_back({v, StopReason::boundary});
      net.nodes.push_back(std::move(node));
      continue;
    }
    node.expanded = true;
    net.nodes.push_back(std::move(node));

    std::set<Address> found;
    auto consider = [&](const Address& w) {
      if (seen.contains(w)) return true;
      if (rejected.contains(w)) return false;
      if (auto why = admissible(w)) {
        rejected.insert(w);
        net.truncation.push_back({w, *why});
        return false;
      }
      found.insert(w);
      return true;
    };
    if (auto* ix = snap.index(v)) {
      for (auto i : ix->in_transfers) {
        const auto& t = snap.transfers()[i];
        if (detail::valid_transfer(t, i, ctx) && consider(t.sender)) net.edges.push_back({i, v});
      }
      for (auto i : ix->out_transfers) {
        const auto& t = snap.transfers()[i];
        if (detail::valid_transfer(t, i, ctx) && consider(t.receiver)) net.edges.push_back({i, v});
      }
      if (pol.token_transfer_edges) {
        for (auto [p, e] : ix->pool_events) {
          const auto& ev = snap.events_of(p)[e];
          if (ev.kind == PoolEventKind::lp_transfer && ev.counterparty && !ev.counterparty->is_zero() &&
              *ev.counterparty != ev.pool)
            consider(*ev.counterparty);
        }
      }
    }
    if (auto it = co_pool.find(v); it != co_pool.end())
      for (const auto& w : it->second) consider(w);
    for (const auto& w : found) {
      seen.insert(w);
      queue.emplace_back(w, depth + 1);
    }
  }

  // Edges are kept only between nodes that made it in.
  std::unordered_set<Address> in_net;
  for (const auto& n : net.nodes) in_net.insert(n.address);
  std::erase_if(net.edges, [&](const NetworkEdge& e) {
    const auto& t = snap.transfers()[e.transfer];
    return !in_net.contains(t.sender) || !in_net.contains(t.receiver);
  });
  std::sort(net.edges.begin(), net.edges.end(), [](auto& a, auto& b) { return a.transfer < b.transfer; });
  net.edges.erase(std::unique(net.edges.begin(), net.edges.end(),
                              [](auto& a, auto& b) { return a.transfer == b.transfer; }),
                  net.edges.end());

  // Wash traders: undirected transfer reachability from a scammer, ignoring
  // public nodes, plus a swap-in on one of the network's scam pools.
  std::set<Address> network_pools;
  for (std::size_t i = 0; i < ctx.scan().scams.size(); ++i)
    for (const auto& a : ctx.scan().pool_scammers[i])
      if (in_net.contains(a)) network_pools.insert(ctx.scan().scams[i].pool);
  std::map<Address, std::vector<Address>> adj;
  for (const auto& e : net.edges) {
    const auto& t = snap.transfers()[e.transfer];
    if (pol.is_public(t.sender) || pol.is_public(t.receiver)) continue;
    adj[t.sender].push_back(t.receiver);
    adj[t.receiver].push_back(t.sender);
  }
  std::set<Address> reach;
  std::deque<Address> q;
  for (const auto& n : net.nodes)
    if (ctx.is_scammer(n.address)) {
      reach.insert(n.address);
      q.push_back(n.address);
    }
  while (!q.empty()) {
    Address a = q.front();
    q.pop_front();
    for (const auto& b : adj[a])
      if (reach.insert(b).second) q.push_back(b);
  }

  for (auto& n : net.nodes) {
    if (!n.public_label.empty()) continue;
    n.role = label_node_local(n.address, ctx);
    if (reach.contains(n.address)) {
      bool swapped = false;
      if (auto* ix = snap.index(n.address))
        for (auto [p, e] : ix->pool_events) {
          const auto& ev = snap.events_of(p)[e];
          if (ev.kind == PoolEventKind::swap && ev.amount_native > Wei(0) && network_pools.contains(ev.pool)) swapped = true;
        }
      if (swapped) {
        n.role.roles.insert(Role::wash_trader);
        n.role.evidence.push_back("WT:reachable-and-swapped");
      }
    }
    if (n.role.roles.empty()) n.role.roles.insert(Role::unlabelled);
  }
  return net;
}

inline ScamNetwork expand_network(const ScamCluster& seed, const ScamContext& ctx,
                                  std::optional<std::size_t> max_nodes = std::nullopt) {
  auto net = expand_network(seed.members, ctx, max_nodes);
  net.seed_cluster = seed.id;
  return net;
}

struct NetworkProfitReport {
  std::vector<PoolProfitReport> pools;  // cluster fields hold the network-aware values
  Wei naive_total;
  Wei t_network;
  Wei total;
};

/// The cluster-aware formula over the network's non-public nodes.
inline NetworkProfitReport network_aware_profit(const ScamNetwork& net, const ScanResult& scan,
                                                const DatasetSnapshot& snap) {
  std::set<Address> members;
  for (const auto& n : net.nodes)
    if (n.public_label.empty()) members.insert(n.address);
  NetworkProfitReport r;
  for (std::size_t i = 0; i < scan.scams.size(); ++i) {
    bool touches = false;
    for (const auto& a : scan.pool_scammers[i]) touches = touches || members.contains(a);
    if (!touches) continue;
    auto pr = group_aware_profit(scan, i, members, snap, /*require_roles=*/false);
    r.naive_total += pr.delta_naive;
    r.total += pr.delta_cluster;
    r.pools.push_back(pr);
  }
  std::vector<Address> list(members.begin(), members.end());
  r.t_network = internal_transfer_fees(list, members, snap);
  r.total -= r.t_network;
  return r;
}

}  // namespace scamgraph
