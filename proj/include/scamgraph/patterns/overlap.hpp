#pragma once

#include <set>
#include <vector>

#include "scamgraph/patterns/chains.hpp"
#include "scamgraph/patterns/major_flow.hpp"
#include "scamgraph/patterns/stars.hpp"

namespace scamgraph {

struct PatternSet {
  std::vector<StarResult> stars;
  std::vector<ChainResult> chains;
  std::vector<MajorFlowResult> flows;
};

struct OverlapReport {
  std::size_t star_addresses = 0;   // scammer satellites plus scammer centers
  std::size_t chain_addresses = 0;
  std::size_t flow_addresses = 0;
  std::size_t star_chain = 0;
  std::size_t star_flow = 0;
  std::size_t chain_flow = 0;
  std::size_t all_three = 0;
  std::size_t any_pattern = 0;
  std::size_t flows_not_chains = 0;  // width > 2
};

inline std::set<Address> star_members(const StarResult& s) {
  std::set<Address> out(s.satellites.begin(), s.satellites.end());
  if (s.center_is_scammer) out.insert(s.center);
  return out;
}

inline OverlapReport pattern_overlap_report(const PatternSet& p) {
  std::set<Address> st, ch, fl;
  for (const auto& s : p.stars) {
    auto m = star_members(s);
    st.insert(m.begin(), m.end());
  }
  for (const auto& c : p.chains) ch.insert(c.members.begin(), c.members.end());
  for (const auto& f : p.flows) fl.insert(f.vertices.begin(), f.vertices.end());
  auto count_both = [](const std::set<Address>& a, const std::set<Address>& b) {
    std::size_t n = 0;
    for (const auto& x : a) n += b.contains(x);
    return n;
  };
  OverlapReport r;
  r.star_addresses = st.size();
  r.chain_addresses = ch.size();
  r.flow_addresses = fl.size();
  r.star_chain = count_both(st, ch);
  r.star_flow = count_both(st, fl);
  r.chain_flow = count_both(ch, fl);
  for (const auto& x : st) r.all_three += ch.contains(x) && fl.contains(x);
  std::set<Address> any = st;
  any.insert(ch.begin(), ch.end());
  any.insert(fl.begin(), fl.end());
  r.any_pattern = any.size();
  for (const auto& f : p.flows) r.flows_not_chains += f.width > 2;
  return r;
}

}  // namespace scamgraph
