#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "scamgraph/ledger/snapshot.hpp"

namespace scamgraph {

/// Which clause of the one-day simple rug pull test a pool failed.
enum class NotScamReason {
  non_native_pool,
  no_events,
  not_one_day,
  token_multi_pool,
  no_mint,
  multiple_mints,
  no_burn,
  multiple_burns,
  insufficient_burn,
};

inline const char* to_string(NotScamReason r) {
  switch (r) {
    case NotScamReason::non_native_pool: return "non_native_pool";
    case NotScamReason::no_events: return "no_events";
    case NotScamReason::not_one_day: return "not_one_day";
    case NotScamReason::token_multi_pool: return "token_multi_pool";
    case NotScamReason::no_mint: return "no_mint";
    case NotScamReason::multiple_mints: return "multiple_mints";
    case NotScamReason::no_burn: return "no_burn";
    case NotScamReason::multiple_burns: return "multiple_burns";
    case NotScamReason::insufficient_burn: return "insufficient_burn";
  }
  return "unknown";
}

struct NotScam {
  NotScamReason reason;
};

struct ScamPoolRecord {
  Address pool;
  Address scam_token;
  PoolEventRecord mint_event;
  PoolEventRecord burn_event;
  Address token_creator;
  Address pool_creator;
  Address liquidity_provider;
  Address liquidity_remover;
  Timestamp lifetime_seconds = 0;
  Wei native_added;
  Wei native_removed;

  std::vector<Address> roles() const {
    return {token_creator, pool_creator, liquidity_provider, liquidity_remover};
  }
  bool has_role(const Address& a) const {
    return a == token_creator || a == pool_creator || a == liquidity_provider || a == liquidity_remover;
  }
};

/// Public/service addresses (exchanges, routers, bots, bridges, mixers) that are
/// never counted as scammers, plus an optional inactivity cutoff.
class ExclusionList {
public:
  void add(const Address& a, std::string label = {}) { labels_.insert_or_assign(a, std::move(label)); }
  bool contains(const Address& a) const { return labels_.contains(a); }
  const std::string* label(const Address& a) const {
    auto it = labels_.find(a);
    return it == labels_.end() ? nullptr : &it->second;
  }
  std::size_t size() const { return labels_.size(); }
  const std::map<Address, std::string>& entries() const { return labels_; }

  std::optional<Timestamp> inactivity_cutoff;

  /// One address per line, optionally followed by a label (whitespace or comma
  /// separated). Blank lines and '#' comments are ignored.
  static ExclusionList parse(std::istream& in) {
    ExclusionList list;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream fields(line);
      std::string addr;
      if (!(fields >> addr)) continue;
      std::string label;
      std::getline(fields >> std::ws, label);
      auto parsed = Address::try_parse(addr);
      if (!parsed) throw Error(ErrorCode::MalformedAddress, "exclusion list line " + std::to_string(lineno) + ": " + addr);
      list.add(*parsed, label);
    }
    return list;
  }
  static ExclusionList load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open exclusion list " + path);
    return parse(in);
  }

private:
  std::map<Address, std::string> labels_;
};

namespace detail {

inline Address resolve_provider(const std::vector<PoolEventRecord>& events, const PoolEventRecord& mint) {
  for (const auto& e : events) {
    if (e.kind == PoolEventKind::lp_transfer && e.tx_hash == mint.tx_hash && e.actor.is_zero() && e.counterparty &&
        !e.counterparty->is_zero())
      return *e.counterparty;
  }
  return mint.actor;
}

inline Address resolve_remover(const std::vector<PoolEventRecord>& events, const PoolEventRecord& burn) {
  for (const auto& e : events) {
    if (e.kind == PoolEventKind::lp_transfer && e.tx_hash == burn.tx_hash && e.counterparty &&
        *e.counterparty == burn.pool && !e.actor.is_zero())
      return e.actor;
  }
  return burn.actor;
}

}  // namespace detail

/// Classifies one pool. Clauses are checked in order: one-day lifetime, token
/// uniqueness, then exactly one mint and one burn burning >= 99% of the LP.
struct ScanOptions {
  Timestamp day_seconds = kDaySeconds;  // maximum pool lifetime
  Fraction burn_share{99, 100};         // of the minted LP that must be burned
};

inline std::variant<ScamPoolRecord, NotScam> classify_pool(const DatasetSnapshot& snap, std::size_t pool_idx,
                                                           const ScanOptions& opts = {}) {
  const ExchangePool& pool = snap.pools()[pool_idx];
  if (!pool.is_native()) return NotScam{NotScamReason::non_native_pool};
  const auto& events = snap.events_of(pool_idx);
  if (events.empty()) return NotScam{NotScamReason::no_events};

  auto [lo, hi] = std::minmax_element(events.begin(), events.end(), [](auto& a, auto& b) { return a.timestamp < b.timestamp; });
  Timestamp lifetime = hi->timestamp - lo->timestamp;
  if (lifetime > opts.day_seconds) return NotScam{NotScamReason::not_one_day};

  const Address& token = pool.other_token();
  if (snap.pools_of_token(token).size() > 1) return NotScam{NotScamReason::token_multi_pool};

  const PoolEventRecord* mint = nullptr;
  const PoolEventRecord* burn = nullptr;
  for (const auto& e : events) {
    if (e.kind == PoolEventKind::mint) {
      if (mint) return NotScam{NotScamReason::multiple_mints};
      mint = &e;
    } else if (e.kind == PoolEventKind::burn) {
      if (burn) return NotScam{NotScamReason::multiple_burns};
      burn = &e;
    }
  }
  if (!mint) return NotScam{NotScamReason::no_mint};
  if (!burn) return NotScam{NotScamReason::no_burn};
  if (!opts.burn_share.covered(burn->lp_amount, mint->lp_amount)) return NotScam{NotScamReason::insufficient_burn};

  ScamPoolRecord r;
  r.pool = pool.address;
  r.scam_token = token;
  r.mint_event = *mint;
  r.burn_event = *burn;
  const ContractRecord* tc = snap.contract(token);
  r.token_creator = tc ? tc->creator : pool.creator;
  r.pool_creator = pool.creator;
  r.liquidity_provider = detail::resolve_provider(events, *mint);
  r.liquidity_remover = detail::resolve_remover(events, *burn);
  r.lifetime_seconds = lifetime;
  r.native_added = mint->amount_native;
  r.native_removed = burn->amount_native;
  return r;
}

/// Deduplicated role addresses minus excluded and inactive ones.
inline std::vector<Address> extract_scammers(const ScamPoolRecord& rec, const ExclusionList& exclusions,
                                             const DatasetSnapshot& snap, std::size_t* exclusion_hits = nullptr) {
  std::set<Address> out;
  for (const auto& a : rec.roles()) {
    if (out.contains(a)) continue;
    if (exclusions.contains(a) || !snap.active_in_window(a, exclusions.inactivity_cutoff)) {
      if (exclusion_hits) ++*exclusion_hits;
      continue;
    }
    out.insert(a);
  }
  return {out.begin(), out.end()};
}

struct ScanResult {
  std::vector<ScamPoolRecord> scams;                 // sorted by pool address
  std::vector<std::vector<Address>> pool_scammers;   // parallel to scams
  std::vector<Address> scammers;                     // sorted, unique
  std::map<Address, NotScamReason> rejected;         // native pools only
  std::size_t pools_total = 0;
  std::size_t pools_scanned_native = 0;
  std::size_t exclusion_hits = 0;

  bool is_scammer(const Address& a) const { return std::binary_search(scammers.begin(), scammers.end(), a); }
  const ScamPoolRecord* find(const Address& pool) const {
    auto it = std::lower_bound(scams.begin(), scams.end(), pool, [](const ScamPoolRecord& r, const Address& p) { return r.pool < p; });
    return it != scams.end() && it->pool == pool ? &*it : nullptr;
  }
  std::optional<std::size_t> find_index(const Address& pool) const {
    auto* r = find(pool);
    if (!r) return std::nullopt;
    return static_cast<std::size_t>(r - scams.data());
  }
};

inline ScanResult scan(const DatasetSnapshot& snap, const ExclusionList& exclusions = {}, const ScanOptions& opts = {}) {
  ScanResult out;
  out.pools_total = snap.pools().size();
  std::set<Address> all;
  for (std::size_t i = 0; i < snap.pools().size(); ++i) {
    if (!snap.pools()[i].is_native()) continue;
    ++out.pools_scanned_native;
    auto verdict = classify_pool(snap, i, opts);
    if (auto* ns = std::get_if<NotScam>(&verdict)) {
      out.rejected.emplace(snap.pools()[i].address, ns->reason);
      continue;
    }
    auto& rec = std::get<ScamPoolRecord>(verdict);
    auto members = extract_scammers(rec, exclusions, snap, &out.exclusion_hits);
    all.insert(members.begin(), members.end());
    out.scams.push_back(std::move(rec));
    out.pool_scammers.push_back(std::move(members));
  }
  out.scammers.assign(all.begin(), all.end());
  return out;
}

}  // namespace scamgraph
