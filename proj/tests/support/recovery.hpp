#pragma once

#include <set>
#include <string>
#include <vector>

#include "scamgraph/cluster/builder.hpp"
#include "scamgraph/patterns/chains.hpp"
#include "scamgraph/patterns/major_flow.hpp"
#include "scamgraph/patterns/stars.hpp"
#include "scamgraph/synth/generator.hpp"

namespace recovery {

using namespace scamgraph;

struct Score {
  std::size_t planted = 0, detected = 0, matched = 0;
  bool perfect() const { return matched == planted && matched == detected; }
  std::string str() const {
    return std::to_string(matched) + "/" + std::to_string(planted) + " recalled, " + std::to_string(matched) + "/" +
           std::to_string(detected) + " precise";
  }
};

template <class Key>
Score compare(const std::set<Key>& planted, const std::set<Key>& detected) {
  Score s{planted.size(), detected.size(), 0};
  for (const auto& k : planted) s.matched += detected.contains(k);
  return s;
}

using StarKey = std::tuple<int, Address, std::vector<Address>>;

inline std::set<StarKey> planted_stars(const GroundTruth& g) {
  std::set<StarKey> out;
  for (const auto& s : g.stars) out.insert({static_cast<int>(s.kind), s.center, s.satellites});
  return out;
}
inline std::set<StarKey> detected_stars(const std::vector<StarResult>& v) {
  std::set<StarKey> out;
  for (const auto& s : v) out.insert({static_cast<int>(s.kind), s.center, s.satellites});
  return out;
}
inline std::set<std::vector<Address>> planted_chains(const GroundTruth& g) {
  std::set<std::vector<Address>> out;
  for (const auto& c : g.chains) out.insert(c.members);
  return out;
}
inline std::set<std::vector<Address>> detected_chains(const std::vector<ChainResult>& v) {
  std::set<std::vector<Address>> out;
  for (const auto& c : v) out.insert(c.members);
  return out;
}
inline std::set<std::vector<Address>> planted_flows(const GroundTruth& g) {
  std::set<std::vector<Address>> out;
  for (const auto& f : g.flows) out.insert(f.vertices);
  return out;
}
inline std::set<std::vector<Address>> detected_flows(const std::vector<MajorFlowResult>& v) {
  std::set<std::vector<Address>> out;
  for (const auto& f : v) out.insert(f.vertices);
  return out;
}

}  // namespace recovery
