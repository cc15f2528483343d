#pragma once

#include <map>
#include <vector>

#include "scamgraph/patterns/funding.hpp"
#include "scamgraph/patterns/stars.hpp"

namespace scamgraph {

struct ChainResult {
  std::vector<Address> members;                    // s1..sn in funding order
  std::vector<const NativeTransfer*> link_transfers;  // members[i] -> members[i+1]
  Timestamp period_seconds = 0;
  std::size_t scam_count = 0;

  double period_days() const { return static_cast<double>(period_seconds) / kDaySeconds; }
  Wei average_transfer() const {
    if (link_transfers.empty()) return Wei(0);
    Wei sum;
    for (auto* t : link_transfers) sum += t->value;
    return Wei(sum.raw() / static_cast<Wei::rep>(link_transfers.size()));
  }
};

/// A scammer-to-scammer largest-funder relation that did not become a chain link.
struct ChainMiss {
  Address funder;
  Address scammer;
  const NativeTransfer* transfer = nullptr;
  const char* reason = "";  // not_largest_beneficiary | before_funder_last_scam | after_first_scam
};

struct ChainDetection {
  std::vector<ChainResult> chains;
  std::vector<ChainMiss> misses;
};

/// Links s -> s' when s's largest out-transfer is s''s largest in-transfer and
/// it happened after s's last scam and before s''s first scam. Chains are the
/// maximal paths of length >= 2 in that relation.
inline ChainDetection detect_chains_with_diagnostics(const FundingIndex& fx) {
  const auto& scan = fx.scan();
  std::map<Address, const NativeTransfer*> succ;  // s -> link to s'
  std::map<Address, Address> pred;
  ChainDetection out;

  for (const auto& [v, ev] : fx.entries()) {
    auto in = fx.ranked(v, Direction::in);
    if (in.empty()) continue;
    const NativeTransfer* t = in.front();
    const Address& u = t->sender;
    const FundingEntry* eu = fx.find(u);
    if (!eu || !scan.is_scammer(u)) continue;
    auto out_u = fx.ranked(u, Direction::out);
    const char* reason = nullptr;
    if (out_u.empty() || out_u.front() != t)
      reason = "not_largest_beneficiary";
    else if (t->timestamp <= eu->timeline.last_end)
      reason = "before_funder_last_scam";
    else if (t->timestamp >= ev.timeline.first_start)
      reason = "after_first_scam";
    if (reason) {
      out.misses.push_back({u, v, t, reason});
      continue;
    }
    succ.emplace(u, t);
    pred.emplace(v, u);
  }

  for (const auto& [head, _] : succ) {
    if (pred.contains(head)) continue;
    ChainResult c;
    Address cur = head;
    c.members.push_back(cur);
    for (auto it = succ.find(cur); it != succ.end(); it = succ.find(cur)) {
      c.link_transfers.push_back(it->second);
      cur = it->second->receiver;
      c.members.push_back(cur);
    }
    std::tie(c.period_seconds, c.scam_count) = detail::scam_span(fx, c.members);
    out.chains.push_back(std::move(c));
  }
  return out;
}

inline std::vector<ChainResult> detect_chains(const FundingIndex& fx) { return detect_chains_with_diagnostics(fx).chains; }

}  // namespace scamgraph
