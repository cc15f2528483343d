#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "scamgraph/core/errors.hpp"
#include "scamgraph/ledger/types.hpp"

namespace scamgraph {

struct Manifest {
  int schema_version = 1;
  std::uint64_t chain_id = 1;
  Address wrapped_native;
  std::optional<Timestamp> collection_start;
  std::optional<Timestamp> collection_end;
  friend bool operator==(const Manifest&, const Manifest&) = default;
};

/// Raw inputs of a snapshot, exactly as persisted by the dataset files.
struct Dataset {
  Manifest manifest;
  std::vector<NativeTransfer> transfers;
  std::vector<PoolEventRecord> events;
  std::vector<ExchangePool> pools;
  std::vector<ContractRecord> contracts;
};

enum class Direction { in, out };

/// "Largest transfer" order: value descending, then earlier timestamp, then
/// lower log index. The trailing keys only make the order total.
struct LargestFirst {
  bool operator()(const NativeTransfer* a, const NativeTransfer* b) const {
    if (a->value != b->value) return a->value > b->value;
    if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
    if (a->log_index != b->log_index) return a->log_index < b->log_index;
    if (a->tx_hash != b->tx_hash) return a->tx_hash < b->tx_hash;
    if (a->sender != b->sender) return a->sender < b->sender;
    return a->receiver < b->receiver;
  }
};

struct AddressIndex {
  std::vector<std::uint32_t> in_transfers;   // indexes into DatasetSnapshot::transfers(), time order
  std::vector<std::uint32_t> out_transfers;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pool_events;  // (pool idx, event idx) as actor
};

/// Immutable, deduplicated and fully indexed view over one dataset. Every
/// detector is a pure function of a snapshot.
class DatasetSnapshot {
public:
  DatasetSnapshot() = default;

  static DatasetSnapshot build(Dataset inputs);

  const Manifest& manifest() const { return manifest_; }
  const std::vector<NativeTransfer>& transfers() const { return transfers_; }
  const std::vector<ExchangePool>& pools() const { return pools_; }
  const std::vector<PoolEventRecord>& events_of(std::size_t pool_idx) const { return events_[pool_idx]; }
  std::size_t event_count() const {
    std::size_t n = 0;
    for (auto& e : events_) n += e.size();
    return n;
  }

  std::optional<std::size_t> pool_index(const Address& pool) const {
    auto it = pool_by_address_.find(pool);
    if (it == pool_by_address_.end()) return std::nullopt;
    return it->second;
  }
  /// Indexes of every pool listing the token on either side.
  std::span<const std::size_t> pools_of_token(const Address& token) const {
    auto it = pools_by_token_.find(token);
    if (it == pools_by_token_.end()) return {};
    return it->second;
  }
  const ContractRecord* contract(const Address& a) const {
    auto it = contracts_.find(a);
    return it == contracts_.end() ? nullptr : &it->second;
  }
  const std::map<Address, ContractRecord>& contracts() const { return contracts_; }

  const AddressIndex* index(const Address& a) const {
    auto it = index_.find(a);
    return it == index_.end() ? nullptr : &it->second;
  }

  /// All addresses that appear as a transfer endpoint or pool-event actor, sorted.
  const std::vector<Address>& addresses() const { return addresses_; }

  AccountKind kind(const Address& a) const {
    if (contract_like_.contains(a)) return AccountKind::contract;
    return index_.contains(a) ? AccountKind::eoa : AccountKind::unknown;
  }

  /// Transfers strictly before t, largest first.
  std::vector<const NativeTransfer*> transfers_before(const Address& a, Timestamp t, Direction d) const {
    return select(a, d, [t](const NativeTransfer& x) { return x.timestamp < t; });
  }
  /// Transfers strictly after t, largest first.
  std::vector<const NativeTransfer*> transfers_after(const Address& a, Timestamp t, Direction d) const {
    return select(a, d, [t](const NativeTransfer& x) { return x.timestamp > t; });
  }
  /// Every transfer in one direction, largest first.
  std::vector<const NativeTransfer*> transfers_ranked(const Address& a, Direction d) const {
    return select(a, d, [](const NativeTransfer&) { return true; });
  }

  /// Native transfers plus pool events the address took part in.
  std::size_t tx_count(const Address& a) const {
    auto* ix = index(a);
    if (!ix) return 0;
    return ix->in_transfers.size() + ix->out_transfers.size() + ix->pool_events.size();
  }

  bool active_in_window(const Address& a, std::optional<Timestamp> cutoff) const;

private:
  template <class Pred>
  std::vector<const NativeTransfer*> select(const Address& a, Direction d, Pred pred) const {
    std::vector<const NativeTransfer*> out;
    auto* ix = index(a);
    if (!ix) return out;
    for (auto i : d == Direction::in ? ix->in_transfers : ix->out_transfers) {
      const auto& t = transfers_[i];
      if (t.sender == t.receiver) continue;
      if (pred(t)) out.push_back(&t);
    }
    std::sort(out.begin(), out.end(), LargestFirst{});
    return out;
  }

  Manifest manifest_;
  std::vector<NativeTransfer> transfers_;
  std::vector<ExchangePool> pools_;
  std::vector<std::vector<PoolEventRecord>> events_;
  std::map<Address, ContractRecord> contracts_;
  std::unordered_map<Address, std::size_t> pool_by_address_;
  std::unordered_map<Address, std::vector<std::size_t>> pools_by_token_;
  std::unordered_map<Address, AddressIndex> index_;
  std::unordered_set<Address> contract_like_;
  std::vector<Address> addresses_;
};

inline bool transfer_time_less(const NativeTransfer& a, const NativeTransfer& b) {
  return std::tie(a.timestamp, a.block, a.log_index, a.tx_hash, a.sender, a.receiver, a.value, a.kind) <
         std::tie(b.timestamp, b.block, b.log_index, b.tx_hash, b.sender, b.receiver, b.value, b.kind);
}

inline DatasetSnapshot DatasetSnapshot::build(Dataset in) {
  DatasetSnapshot s;
  s.manifest_ = in.manifest;

  // Transfers: canonical time order, exact duplicates collapsed.
  std::sort(in.transfers.begin(), in.transfers.end(), transfer_time_less);
  for (auto& t : in.transfers) {
    if (!s.transfers_.empty() && s.transfers_.back().identity() == t.identity()) continue;
    s.transfers_.push_back(std::move(t));
  }

  std::sort(in.pools.begin(), in.pools.end(),
            [](const ExchangePool& a, const ExchangePool& b) { return a.address < b.address; });
  for (auto& p : in.pools) {
    if (!s.pools_.empty() && s.pools_.back().address == p.address) continue;
    if (p.token0 == p.token1) throw Error(ErrorCode::MalformedData, "pool " + p.address.hex() + " lists one token twice");
    s.pool_by_address_.emplace(p.address, s.pools_.size());
    s.pools_.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < s.pools_.size(); ++i) {
    s.pools_by_token_[s.pools_[i].token0].push_back(i);
    s.pools_by_token_[s.pools_[i].token1].push_back(i);
    s.contract_like_.insert(s.pools_[i].address);
  }

  s.events_.resize(s.pools_.size());
  for (auto& e : in.events) {
    auto it = s.pool_by_address_.find(e.pool);
    if (it == s.pool_by_address_.end())
      throw Error(ErrorCode::UnknownPoolReference, "event " + e.tx_hash.hex() + " references pool " + e.pool.hex());
    if ((e.kind == PoolEventKind::mint || e.kind == PoolEventKind::burn) && e.lp_amount <= Wei(0))
      throw Error(ErrorCode::MalformedEvent, std::string(to_string(e.kind)) + " without LP amount in " + e.tx_hash.hex());
    auto& list = s.events_[it->second];
    if (!list.empty() && e.order_key() <= list.back().order_key()) {
      auto same = std::lower_bound(list.begin(), list.end(), e, [](const PoolEventRecord& a, const PoolEventRecord& b) {
        return a.order_key() < b.order_key();
      });
      if (same != list.end() && *same == e) continue;  // replayed duplicate
      throw Error(ErrorCode::NonMonotonicPoolEvents, "pool " + e.pool.hex() + " at block " + std::to_string(e.block));
    }
    list.push_back(std::move(e));
  }

  for (auto& c : in.contracts) {
    s.contract_like_.insert(c.address);
    s.contracts_.insert_or_assign(c.address, std::move(c));
  }

  for (std::uint32_t i = 0; i < s.transfers_.size(); ++i) {
    const auto& t = s.transfers_[i];
    s.index_[t.receiver].in_transfers.push_back(i);
    s.index_[t.sender].out_transfers.push_back(i);
    if (t.kind == TransferKind::internal) s.contract_like_.insert(t.sender);
  }
  for (std::uint32_t p = 0; p < s.events_.size(); ++p) {
    for (std::uint32_t e = 0; e < s.events_[p].size(); ++e) s.index_[s.events_[p][e].actor].pool_events.emplace_back(p, e);
  }
  s.addresses_.reserve(s.index_.size());
  for (auto& [a, _] : s.index_) s.addresses_.push_back(a);
  std::sort(s.addresses_.begin(), s.addresses_.end());
  return s;
}

inline bool DatasetSnapshot::active_in_window(const Address& a, std::optional<Timestamp> cutoff) const {
  Timestamp lo = manifest_.collection_start.value_or(INT64_MIN);
  if (cutoff) lo = std::max(lo, *cutoff);
  Timestamp hi = manifest_.collection_end.value_or(INT64_MAX);
  auto inside = [&](Timestamp t) { return t >= lo && t <= hi; };
  if (auto* ix = index(a)) {
    for (auto i : ix->in_transfers)
      if (inside(transfers_[i].timestamp)) return true;
    for (auto i : ix->out_transfers)
      if (inside(transfers_[i].timestamp)) return true;
    for (auto [p, e] : ix->pool_events)
      if (inside(events_[p][e].timestamp)) return true;
  }
  for (const auto& p : pools_)
    if (p.creator == a && inside(p.created_at)) return true;
  for (const auto& [_, c] : contracts_)
    if (c.creator == a && inside(c.created_at)) return true;
  return false;
}

}  // namespace scamgraph
