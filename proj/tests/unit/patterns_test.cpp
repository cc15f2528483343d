#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "scamgraph/patterns/chains.hpp"
#include "scamgraph/patterns/major_flow.hpp"
#include "scamgraph/patterns/overlap.hpp"
#include "scamgraph/patterns/stars.hpp"

using namespace scamgraph;
using fixtures::eth;

namespace {

struct Analysed {
  DatasetSnapshot snap;
  ScanResult scan;
  std::unique_ptr<FundingIndex> fx;
  explicit Analysed(const Dataset& d, FundingOptions o = {}) : snap(DatasetSnapshot::build(d)), scan(scamgraph::scan(snap)) {
    fx = std::make_unique<FundingIndex>(snap, scan, o);
  }
};

Wei sum(const std::vector<const NativeTransfer*>& v) {
  Wei s;
  for (auto* t : v) s += t->value;
  return s;
}

}  // namespace

TEST(Funding, Example1Sets) {
  fixtures::Example1 ex;
  Analysed an(ex.b.build());
  auto* e = an.fx->find(ex.a["5a95"]);
  ASSERT_TRUE(e && e->tf && e->tb);
  EXPECT_EQ(e->timeline.first_cost, eth("15"));
  EXPECT_EQ(sum(*e->tf), eth("15.2"));
  EXPECT_EQ(sum(*e->tb), eth("15.55"));
  EXPECT_EQ(e->funders(), (std::set<Address>{ex.a["e3df"], ex.a["9cb0"]}));
  EXPECT_EQ(e->beneficiaries(), (std::set<Address>{ex.a["fc34"], ex.a["9dbb"]}));
}

TEST(Funding, CoverageBoundaries) {
  LedgerBuilder b{"cov", Wei(0)};
  Address s = b.address("s"), t = b.address("t");
  b.transfer(b.address("f"), s, eth("10"), 10);
  fixtures::run_scam(b, s, "s", eth("10"), eth("10"), 100, 200);
  b.transfer(b.address("g1"), t, eth("4.95"), 10);
  b.transfer(b.address("g2"), t, eth("4.95"), 11);
  fixtures::run_scam(b, t, "t", eth("10"), eth("10"), 100, 200);
  Analysed an(b.build());
  ASSERT_TRUE(an.fx->find(s)->tf);
  EXPECT_EQ(an.fx->find(s)->tf->size(), 1u);
  EXPECT_FALSE(an.fx->find(t)->tf);
}

TEST(Funding, CostIncludesCreationAndMintFees) {
  LedgerBuilder b{"fees", eth("0.01")};
  Address s = b.address("s");
  fixtures::run_scam(b, s, "s", eth("1"), eth("2"), 100, 200);
  Analysed an(b.build());
  EXPECT_EQ(an.fx->find(s)->timeline.first_cost, eth("1.03"));
  EXPECT_EQ(an.fx->find(s)->timeline.last_revenue, eth("1.99"));
}

TEST(MajorFlow, Example1) {
  fixtures::Example1 ex;
  Analysed an(ex.b.build());
  auto flows = detect_major_flows(*an.fx);
  ASSERT_EQ(flows.size(), 1u);
  const auto& f = flows.front();
  EXPECT_EQ(f.size(), 5u);
  EXPECT_EQ(f.width, 5u);
  EXPECT_EQ(f.fund_in, eth("20.4"));
  EXPECT_EQ(f.fund_out, eth("20.5"));
  EXPECT_EQ(f.roles.at(ex.a["e3df"]), FlowRole::input);
  EXPECT_EQ(f.roles.at(ex.a["9cb0"]), FlowRole::input);
  EXPECT_EQ(f.roles.at(ex.a["5a95"]), FlowRole::internal);
  EXPECT_EQ(f.roles.at(ex.a["fc34"]), FlowRole::output);
  EXPECT_EQ(f.roles.at(ex.a["9dbb"]), FlowRole::output);
  EXPECT_EQ(f.edges.size(), 5u);
}

TEST(MajorFlow, Example1ChainMissesTheSideAddresses) {
  fixtures::Example1 ex;
  Analysed an(ex.b.build());
  auto chains = detect_chains(*an.fx);
  ASSERT_EQ(chains.size(), 1u);
  EXPECT_EQ(chains[0].members, (std::vector<Address>{ex.a["e3df"], ex.a["5a95"], ex.a["fc34"]}));
}

TEST(MajorFlow, PairIsWidthTwo) {
  LedgerBuilder b{"pair", Wei(0)};
  Address u = b.address("u"), v = b.address("v");
  fixtures::run_scam(b, u, "u", eth("1"), eth("3"), 100, 200);
  b.transfer(u, v, eth("2.8"), 300);
  fixtures::run_scam(b, v, "v", eth("2"), eth("2"), 400, 500);
  Analysed an(b.build());
  auto flows = detect_major_flows(*an.fx);
  ASSERT_EQ(flows.size(), 1u);
  EXPECT_EQ(flows[0].width, 2u);
  EXPECT_EQ(flows[0].vertices, (std::vector<Address>{std::min(u, v), std::max(u, v)}));
  PatternSet ps;
  ps.flows = flows;
  ps.chains = detect_chains(*an.fx);
  auto ov = pattern_overlap_report(ps);
  EXPECT_EQ(ov.chain_flow, 2u);
  EXPECT_EQ(ov.flows_not_chains, 0u);
}

TEST(MajorFlow, SetMissingFromReceiversFundingDoesNotSinkIt) {
  // w's only payout lands in v but v's costs are already covered by u
  LedgerBuilder b{"unshared", Wei(0)};
  Address u = b.address("u"), v = b.address("v"), w = b.address("w");
  fixtures::run_scam(b, u, "u", eth("1"), eth("3"), 100, 200);
  fixtures::run_scam(b, w, "w", eth("1"), eth("0.5"), 100, 200);
  b.transfer(u, v, eth("2.8"), 300);
  b.transfer(w, v, eth("0.5"), 350);
  fixtures::run_scam(b, v, "v", eth("2"), eth("2"), 400, 500);
  Analysed an(b.build());
  ASSERT_FALSE(an.fx->find(v)->tf->empty());
  EXPECT_EQ(an.fx->find(v)->tf->size(), 1u);
  auto flows = detect_major_flows(*an.fx);
  ASSERT_EQ(flows.size(), 1u);
  EXPECT_EQ(flows[0].vertices, (std::vector<Address>{std::min(u, v), std::max(u, v)}));
}

TEST(MajorFlow, PartialFundingSetOutsideScammersBreaksFlow) {
  LedgerBuilder b{"partial", Wei(0)};
  Address u = b.address("u"), v = b.address("v");
  fixtures::run_scam(b, u, "u", eth("1"), eth("3"), 100, 200);
  b.transfer(u, v, eth("1.5"), 300);
  b.transfer(b.address("outsider"), v, eth("1"), 301);
  fixtures::run_scam(b, v, "v", eth("2"), eth("2"), 400, 500);
  Analysed an(b.build());
  EXPECT_TRUE(detect_major_flows(*an.fx).empty());
}

TEST(Stars, InOutStarOfSix) {
  LedgerBuilder b{"star", Wei(0)};
  Address c = b.address_with_tail("center", "dc5b");
  for (int i = 0; i < 6; ++i) {
    Address s = b.address("sat" + std::to_string(i));
    b.transfer(c, s, eth("2"), 10 + i);
    fixtures::run_scam(b, s, "sat" + std::to_string(i), eth("2"), eth("3"), 100 + i, 200 + i);
    b.transfer(s, c, eth("2.9"), 300 + i);
  }
  Analysed an(b.build());
  auto stars = detect_stars(*an.fx);
  ASSERT_EQ(stars.size(), 1u);
  EXPECT_EQ(stars[0].kind, StarKind::in_out);
  EXPECT_EQ(stars[0].center, c);
  EXPECT_EQ(stars[0].satellites.size(), 6u);
  EXPECT_EQ(stars[0].fund_out, eth("12"));
  EXPECT_EQ(stars[0].fund_in, eth("17.4"));
  EXPECT_EQ(stars[0].scam_count, 6u);
  EXPECT_FALSE(stars[0].center_is_scammer);
}

TEST(Stars, FourSatellitesIsNotAStar) {
  LedgerBuilder b{"star4", Wei(0)};
  Address c = b.address("center");
  for (int i = 0; i < 4; ++i) {
    Address s = b.address("sat" + std::to_string(i));
    b.transfer(c, s, eth("2"), 10);
    fixtures::run_scam(b, s, "sat" + std::to_string(i), eth("2"), eth("3"), 100, 200);
  }
  Analysed an(b.build());
  EXPECT_TRUE(detect_stars(*an.fx).empty());
  EXPECT_EQ(detect_stars(*an.fx, {.n_min = 4}).size(), 1u);
}

TEST(Stars, SeparateInAndOutCenters) {
  LedgerBuilder b{"star-io", Wei(0)};
  Address f = b.address("funder"), d = b.address("depositor");
  for (int i = 0; i < 5; ++i) {
    Address s = b.address("sat" + std::to_string(i));
    b.transfer(f, s, eth("2"), 10);
    fixtures::run_scam(b, s, "sat" + std::to_string(i), eth("2"), eth("3"), 100, 200);
    b.transfer(s, d, eth("2.7"), 300);
  }
  Analysed an(b.build());
  auto stars = detect_stars(*an.fx);
  ASSERT_EQ(stars.size(), 2u);
  std::set<StarKind> kinds{stars[0].kind, stars[1].kind};
  EXPECT_EQ(kinds, (std::set<StarKind>{StarKind::in, StarKind::out}));
}

TEST(Chains, TieGoesToEarlierTransfer) {
  LedgerBuilder b{"tie", Wei(0)};
  Address s = b.address("s"), x = b.address("x"), y = b.address("y");
  fixtures::run_scam(b, s, "s", eth("1"), eth("3"), 100, 200);
  b.transfer(s, y, eth("1"), 301);
  b.transfer(s, x, eth("1"), 300);
  fixtures::run_scam(b, x, "x", eth("1"), eth("1"), 400, 500);
  fixtures::run_scam(b, y, "y", eth("1"), eth("1"), 400, 500);
  Analysed an(b.build());
  auto det = detect_chains_with_diagnostics(*an.fx);
  ASSERT_EQ(det.chains.size(), 1u);
  EXPECT_EQ(det.chains[0].members, (std::vector<Address>{s, x}));
  ASSERT_EQ(det.misses.size(), 1u);
  EXPECT_EQ(det.misses[0].scammer, y);
}

TEST(Chains, HeadsFunderExcludedWhenItsLargestBeneficiaryIsElsewhere) {
  LedgerBuilder b{"89d1", Wei(0)};
  Address ec2 = b.address_with_tail("7ec2", "7ec2"), d1 = b.address_with_tail("89d1", "89d1"),
          other = b.address("other"), next = b.address("next");
  fixtures::run_scam(b, ec2, "7ec2", eth("1"), eth("5"), 100, 200);
  b.transfer(ec2, other, eth("3"), 300);
  b.transfer(ec2, d1, eth("1.5"), 301);
  fixtures::run_scam(b, other, "other", eth("1"), eth("1"), 400, 500);
  fixtures::run_scam(b, d1, "89d1", eth("1"), eth("4"), 400, 500);
  b.transfer(d1, next, eth("3.8"), 600);
  fixtures::run_scam(b, next, "next", eth("1"), eth("1"), 700, 800);
  Analysed an(b.build());
  auto det = detect_chains_with_diagnostics(*an.fx);
  bool found = false;
  for (const auto& c : det.chains) {
    if (c.members.front() == d1) {
      found = true;
      EXPECT_EQ(c.members, (std::vector<Address>{d1, next}));
    }
    EXPECT_EQ(std::count(c.members.begin(), c.members.end(), d1) + std::count(c.members.begin(), c.members.end(), ec2) > 1, false);
  }
  EXPECT_TRUE(found);
  bool miss = std::any_of(det.misses.begin(), det.misses.end(), [&](const ChainMiss& m) {
    return m.funder == ec2 && m.scammer == d1 && std::string(m.reason) == "not_largest_beneficiary";
  });
  EXPECT_TRUE(miss);
}

TEST(Overlap, DisjointPatterns) {
  PatternSet ps;
  StarResult s;
  s.satellites = {Address::parse("0x0000000000000000000000000000000000000001")};
  ps.stars.push_back(s);
  ChainResult c;
  c.members = {Address::parse("0x0000000000000000000000000000000000000002")};
  ps.chains.push_back(c);
  auto r = pattern_overlap_report(ps);
  EXPECT_EQ(r.star_chain, 0u);
  EXPECT_EQ(r.any_pattern, 2u);
}
