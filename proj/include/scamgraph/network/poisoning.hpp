#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "scamgraph/ledger/snapshot.hpp"

namespace scamgraph {

inline constexpr Wei kDefaultDustCeiling = Wei(10'000'000'000'000);  // 1e13 wei

/// In-transfers to addr that should not count as edges: zero-value messages,
/// and dust sent from an address whose first/last four hex digits imitate a
/// different address that addr has paid before. Returns transfer indexes.
inline std::set<std::uint32_t> detect_poisoning(const Address& addr, const DatasetSnapshot& snap,
                                                Wei dust_ceiling = kDefaultDustCeiling) {
  std::set<std::uint32_t> flagged;
  const AddressIndex* ix = snap.index(addr);
  if (!ix) return flagged;
  std::unordered_map<std::string, std::vector<Address>> look_alike;
  for (auto i : ix->out_transfers) {
    const auto& to = snap.transfers()[i].receiver;
    auto& v = look_alike[to.head4() + to.tail4()];
    if (std::find(v.begin(), v.end(), to) == v.end()) v.push_back(to);
  }
  for (auto i : ix->in_transfers) {
    const auto& t = snap.transfers()[i];
    if (t.value.is_zero()) {
      flagged.insert(i);
      continue;
    }
    if (t.value > dust_ceiling) continue;
    auto it = look_alike.find(t.sender.head4() + t.sender.tail4());
    if (it == look_alike.end()) continue;
    for (const auto& n : it->second)
      if (n != t.sender) {
        flagged.insert(i);
        break;
      }
  }
  return flagged;
}

}  // namespace scamgraph
