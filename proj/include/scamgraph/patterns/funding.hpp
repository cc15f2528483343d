#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "scamgraph/rugpull/detector.hpp"

namespace scamgraph {

struct FundingOptions {
  Fraction p{9, 10};
  bool count_internal = true;         // internal transfers are in/out-transactions too
  bool include_own_swap_ins = false;  // add the scammer's own swap-ins on its first pool to cost
};

/// When an address ran its scams, and what the first one cost / the last one paid.
struct ScamTimeline {
  Timestamp first_start = 0;  // earliest liquidity add over its scam pools
  Timestamp last_end = 0;     // latest liquidity removal
  std::vector<std::size_t> pools;  // indexes into ScanResult::scams, by mint time
  std::size_t first_pool = 0;
  std::size_t last_pool = 0;
  Wei first_cost;
  Wei last_revenue;
};

/// Native liquidity plus the fees of the token-creation, pool-creation and
/// add-liquidity transactions (a fee paid in one shared tx counts once).
inline Wei scam_pool_cost(const ScamPoolRecord& rec, const DatasetSnapshot& snap) {
  Wei cost = rec.mint_event.amount_native;
  std::set<TxHash> seen;
  auto add_fee = [&](const TxHash& tx, Wei fee) {
    if (seen.insert(tx).second) cost += fee;
  };
  if (const ContractRecord* c = snap.contract(rec.scam_token)) add_fee(c->creation_tx, c->creation_fee);
  if (auto idx = snap.pool_index(rec.pool)) {
    const auto& pool = snap.pools()[*idx];
    add_fee(pool.creation_tx, pool.creation_fee);
  }
  add_fee(rec.mint_event.tx_hash, rec.mint_event.gas_fee);
  return cost;
}

/// Native received from the burn net of the removal fee, never below zero.
inline Wei scam_pool_revenue(const ScamPoolRecord& rec) {
  Wei r = rec.burn_event.amount_native - rec.burn_event.gas_fee;
  return r < Wei(0) ? Wei(0) : r;
}

struct FundingEntry {
  Address scammer;
  ScamTimeline timeline;
  std::optional<std::vector<const NativeTransfer*>> tf;  // T_F(s), largest first
  std::optional<std::vector<const NativeTransfer*>> tb;  // T_B(s), largest first

  std::set<Address> funders() const {
    std::set<Address> out;
    if (tf)
      for (auto* t : *tf) out.insert(t->sender);
    return out;
  }
  std::set<Address> beneficiaries() const {
    std::set<Address> out;
    if (tb)
      for (auto* t : *tb) out.insert(t->receiver);
    return out;
  }
};

namespace detail {

inline std::vector<const NativeTransfer*> filter_kind(std::vector<const NativeTransfer*> v, bool count_internal) {
  if (!count_internal)
    std::erase_if(v, [](const NativeTransfer* t) { return t->kind == TransferKind::internal; });
  return v;
}

/// Greedy prefix of a largest-first list whose sum reaches the target.
template <class Covered>
std::optional<std::vector<const NativeTransfer*>> greedy_cover(const std::vector<const NativeTransfer*>& ranked,
                                                               Covered covered) {
  std::vector<const NativeTransfer*> out;
  Wei sum;
  for (auto* t : ranked) {
    out.push_back(t);
    sum += t->value;
    if (covered(sum)) return out;
  }
  return std::nullopt;
}

}  // namespace detail

/// Per-scammer timelines and funding sets over one scan.
class FundingIndex {
public:
  FundingIndex(const DatasetSnapshot& snap, const ScanResult& scan, FundingOptions opts = {})
      : snap_(&snap), scan_(&scan), opts_(opts) {
    std::map<Address, std::vector<std::size_t>> pools_of;
    for (std::size_t i = 0; i < scan.scams.size(); ++i)
      for (const auto& a : scan.pool_scammers[i]) pools_of[a].push_back(i);
    for (auto& [addr, pools] : pools_of) {
      std::sort(pools.begin(), pools.end(), [&](std::size_t a, std::size_t b) {
        const auto& ma = scan.scams[a].mint_event;
        const auto& mb = scan.scams[b].mint_event;
        return std::tie(ma.timestamp, ma.block, ma.log_index, scan.scams[a].pool) <
               std::tie(mb.timestamp, mb.block, mb.log_index, scan.scams[b].pool);
      });
      ScamTimeline tl;
      tl.pools = pools;
      tl.first_pool = pools.front();
      tl.first_start = scan.scams[tl.first_pool].mint_event.timestamp;
      tl.last_pool = pools.front();
      for (auto i : pools) {
        const auto& b = scan.scams[i].burn_event;
        const auto& cur = scan.scams[tl.last_pool].burn_event;
        if (std::tie(b.timestamp, b.block, b.log_index) > std::tie(cur.timestamp, cur.block, cur.log_index)) tl.last_pool = i;
      }
      tl.last_end = scan.scams[tl.last_pool].burn_event.timestamp;
      tl.first_cost = scam_pool_cost(scan.scams[tl.first_pool], snap);
      if (opts.include_own_swap_ins) tl.first_cost += own_swap_ins(addr, scan.scams[tl.first_pool]);
      tl.last_revenue = scam_pool_revenue(scan.scams[tl.last_pool]);
      entries_.emplace(addr, compute(addr, std::move(tl)));
    }
  }

  const FundingOptions& options() const { return opts_; }
  const DatasetSnapshot& snapshot() const { return *snap_; }
  const ScanResult& scan() const { return *scan_; }
  const std::map<Address, FundingEntry>& entries() const { return entries_; }

  const FundingEntry* find(const Address& a) const {
    auto it = entries_.find(a);
    return it == entries_.end() ? nullptr : &it->second;
  }
  const ScamTimeline* timeline(const Address& a) const {
    auto* e = find(a);
    return e ? &e->timeline : nullptr;
  }

  /// In- or out-transfers strictly before/after t, honouring the internal-transfer toggle.
  std::vector<const NativeTransfer*> before(const Address& a, Timestamp t, Direction d) const {
    return detail::filter_kind(snap_->transfers_before(a, t, d), opts_.count_internal);
  }
  std::vector<const NativeTransfer*> after(const Address& a, Timestamp t, Direction d) const {
    return detail::filter_kind(snap_->transfers_after(a, t, d), opts_.count_internal);
  }
  std::vector<const NativeTransfer*> ranked(const Address& a, Direction d) const {
    return detail::filter_kind(snap_->transfers_ranked(a, d), opts_.count_internal);
  }

private:
  Wei own_swap_ins(const Address& a, const ScamPoolRecord& rec) const {
    Wei sum;
    auto idx = snap_->pool_index(rec.pool);
    if (!idx) return sum;
    for (const auto& e : snap_->events_of(*idx))
      if (e.kind == PoolEventKind::swap && e.actor == a && e.amount_native > Wei(0)) sum += e.amount_native;
    return sum;
  }

  FundingEntry compute(const Address& a, ScamTimeline tl) const {
    FundingEntry e;
    e.scammer = a;
    if (tl.first_cost > Wei(0)) {
      Wei cost = tl.first_cost;
      e.tf = detail::greedy_cover(before(a, tl.first_start, Direction::in), [cost](Wei s) { return s >= cost; });
    }
    if (tl.last_revenue > Wei(0)) {
      Wei rev = tl.last_revenue;
      Fraction p = opts_.p;
      e.tb = detail::greedy_cover(after(a, tl.last_end, Direction::out), [rev, p](Wei s) { return p.covered(s, rev); });
    }
    e.timeline = std::move(tl);
    return e;
  }

  const DatasetSnapshot* snap_;
  const ScanResult* scan_;
  FundingOptions opts_;
  std::map<Address, FundingEntry> entries_;
};

}  // namespace scamgraph
