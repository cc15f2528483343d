#pragma once

#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "scamgraph/patterns/funding.hpp"

namespace scamgraph {

enum class StarKind { in, out, in_out };

inline const char* to_string(StarKind k) {
  switch (k) {
    case StarKind::in: return "in";
    case StarKind::out: return "out";
    case StarKind::in_out: return "in_out";
  }
  return "in";
}

struct StarResult {
  StarKind kind = StarKind::in;
  Address center;
  std::vector<Address> satellites;  // sorted
  Wei fund_in;   // satellites -> center
  Wei fund_out;  // center -> satellites
  Timestamp period_seconds = 0;
  std::size_t scam_count = 0;
  bool center_is_scammer = false;

  double period_days() const { return static_cast<double>(period_seconds) / kDaySeconds; }
};

struct StarOptions {
  std::size_t n_min = 5;
};

/// Single largest in-transfer before the first scam, if it alone covers the first scam's cost.
inline const NativeTransfer* major_funder(const FundingIndex& fx, const FundingEntry& e) {
  auto in = fx.before(e.scammer, e.timeline.first_start, Direction::in);
  if (in.empty() || in.front()->value < e.timeline.first_cost) return nullptr;
  return in.front();
}

/// Single largest out-transfer after the last scam, if it alone covers p of the last revenue.
inline const NativeTransfer* major_beneficiary(const FundingIndex& fx, const FundingEntry& e) {
  auto out = fx.after(e.scammer, e.timeline.last_end, Direction::out);
  if (out.empty() || !fx.options().p.covered(out.front()->value, e.timeline.last_revenue)) return nullptr;
  return out.front();
}

namespace detail {

inline bool ever_sent(const DatasetSnapshot& snap, const Address& from, const Address& to, bool count_internal) {
  auto* ix = snap.index(from);
  if (!ix) return false;
  for (auto i : ix->out_transfers) {
    const auto& t = snap.transfers()[i];
    if (t.receiver == to && (count_internal || t.kind == TransferKind::normal)) return true;
  }
  return false;
}

/// Period and scam count over the pools run by the given addresses.
inline std::pair<Timestamp, std::size_t> scam_span(const FundingIndex& fx, const std::vector<Address>& members) {
  std::set<std::size_t> pools;
  for (const auto& a : members)
    if (auto* tl = fx.timeline(a)) pools.insert(tl->pools.begin(), tl->pools.end());
  if (pools.empty()) return {0, 0};
  Timestamp lo = INT64_MAX, hi = INT64_MIN;
  for (auto i : pools) {
    lo = std::min(lo, fx.scan().scams[i].mint_event.timestamp);
    hi = std::max(hi, fx.scan().scams[i].burn_event.timestamp);
  }
  return {hi - lo, pools.size()};
}

}  // namespace detail

/// Groups each scammer under its major funder and/or major beneficiary and
/// emits every group with at least n_min satellites.
inline std::vector<StarResult> detect_stars(const FundingIndex& fx, StarOptions opts = {}) {
  const auto& snap = fx.snapshot();
  bool internal = fx.options().count_internal;
  std::map<std::tuple<StarKind, Address>, std::vector<Address>> groups;
  for (const auto& [s, e] : fx.entries()) {
    const NativeTransfer* f = major_funder(fx, e);
    const NativeTransfer* b = major_beneficiary(fx, e);
    if (f && b && f->sender == b->receiver) {
      groups[{StarKind::in_out, f->sender}].push_back(s);
      continue;
    }
    if (f && !detail::ever_sent(snap, s, f->sender, internal)) groups[{StarKind::out, f->sender}].push_back(s);
    if (b && !detail::ever_sent(snap, b->receiver, s, internal)) groups[{StarKind::in, b->receiver}].push_back(s);
  }

  std::vector<StarResult> out;
  for (auto& [key, sats] : groups) {
    if (sats.size() < opts.n_min) continue;
    StarResult r;
    r.kind = std::get<0>(key);
    r.center = std::get<1>(key);
    r.satellites = sats;  // map iteration already sorted them
    std::set<Address> sat_set(sats.begin(), sats.end());
    if (auto* ix = snap.index(r.center)) {
      for (auto i : ix->in_transfers) {
        const auto& t = snap.transfers()[i];
        if (sat_set.contains(t.sender) && (internal || t.kind == TransferKind::normal)) r.fund_in += t.value;
      }
      for (auto i : ix->out_transfers) {
        const auto& t = snap.transfers()[i];
        if (sat_set.contains(t.receiver) && (internal || t.kind == TransferKind::normal)) r.fund_out += t.value;
      }
    }
    r.center_is_scammer = fx.scan().is_scammer(r.center);
    std::vector<Address> members = sats;
    if (r.center_is_scammer) members.push_back(r.center);
    std::tie(r.period_seconds, r.scam_count) = detail::scam_span(fx, members);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace scamgraph
