#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "scamgraph/network/network.hpp"

using namespace scamgraph;
using fixtures::eth;

namespace {

struct GjiRun {
  fixtures::Gji g;
  DatasetSnapshot snap;
  ScanResult sc;
  TerminalPolicy pol;
  GjiRun() : snap(DatasetSnapshot::build(g.b.build())), sc(scan(snap)) { pol.public_labels[g.exchange] = "cex"; }
};

}  // namespace

TEST(Network, GjiLabelsAndReach) {
  GjiRun r;
  ScamContext ctx(r.snap, r.sc, r.pol);
  auto net = expand_network({r.g.a["9aa6"]}, ctx);
  auto& a = r.g.a;
  ASSERT_NE(net.node(a["9aa6"]), nullptr);
  EXPECT_TRUE(net.node(a["9aa6"])->role.has(Role::scammer));
  EXPECT_TRUE(net.node(a["7298"])->role.has(Role::depositor));
  for (const char* w : {"6b85", "8f33", "381c", "b7f1", "d187", "fa6a", "884f"}) {
    ASSERT_NE(net.node(a[w]), nullptr) << w;
    EXPECT_TRUE(net.node(a[w])->role.has(Role::wash_trader)) << w;
  }
  EXPECT_EQ(net.node(a["6b85"])->depth, 5u);
  EXPECT_TRUE(net.node(a["6b85"])->role.has(Role::withdrawer));
  ASSERT_NE(net.node(r.g.exchange), nullptr);
  EXPECT_FALSE(net.node(r.g.exchange)->expanded);
  EXPECT_EQ(net.node(r.g.b.address("unrelated-user")), nullptr);

  // a one-hop view sees none of them funded by the scammer
  std::size_t funded_by_scammer = 0;
  for (const char* w : {"6b85", "8f33", "381c", "b7f1", "d187", "fa6a", "884f"})
    for (auto* t : r.snap.transfers_ranked(a[w], Direction::in)) funded_by_scammer += t->sender == a["9aa6"];
  EXPECT_EQ(funded_by_scammer, 0u);
}

TEST(Network, GjiProfitDropsByWash) {
  GjiRun r;
  ScamContext ctx(r.snap, r.sc, r.pol);
  auto net = expand_network({r.g.a["9aa6"]}, ctx);
  auto p = network_aware_profit(net, r.sc, r.snap);
  ASSERT_EQ(p.pools.size(), 1u);
  EXPECT_EQ(p.pools[0].delta_naive, eth("2.27"));
  EXPECT_EQ(p.pools[0].delta_naive - p.pools[0].delta_cluster, fixtures::Gji::wash_total() + fixtures::Gji::wash_fees());
}

TEST(Network, TerminalsAreNeverExpanded) {
  GjiRun r;
  ScamContext ctx(r.snap, r.sc, r.pol);
  auto net = expand_network({r.g.a["9aa6"]}, ctx);
  for (const auto& e : net.edges) EXPECT_TRUE(net.node(e.via)->expanded);
  EXPECT_EQ(net.truncation_counts()[StopReason::public_terminal], 1u);
}

TEST(Network, BudgetStopsWithPartialResult) {
  GjiRun r;
  ScamContext ctx(r.snap, r.sc, r.pol);
  auto net = expand_network({r.g.a["9aa6"]}, ctx, 3);
  EXPECT_TRUE(net.budget_exceeded);
  EXPECT_EQ(net.nodes.size(), 3u);
}

TEST(Network, CoordinatorNeedsScammerNeighbours) {
  LedgerBuilder b("coord", Wei(0));
  auto f = b.address("funder");
  for (int i = 0; i < 5; ++i) {
    auto s = b.address("s" + std::to_string(i));
    b.transfer(f, s, eth("2"), 10);
    fixtures::run_scam(b, s, "t" + std::to_string(i), eth("1"), eth("1.5"), 1000, 2000);
  }
  TerminalPolicy pol;
  {
    auto snap = DatasetSnapshot::build(b.build());
    auto sc = scan(snap);
    ScamContext ctx(snap, sc, pol);
    EXPECT_TRUE(ctx.is_coordinator(f));
  }
  for (int i = 0; i < 6; ++i) b.transfer(f, b.address("benign" + std::to_string(i)), eth("0.1"), 50);
  auto snap = DatasetSnapshot::build(b.build());
  auto sc = scan(snap);
  ScamContext ctx(snap, sc, pol);
  EXPECT_FALSE(ctx.is_coordinator(f));
}

TEST(Network, BigNodesAndBoundary) {
  LedgerBuilder b("big", Wei(0));
  auto s = b.address("scammer");
  fixtures::run_scam(b, s, "tok", eth("1"), eth("2"), 1000, 2000);
  auto busy = b.address("busy");
  auto huge = b.address("huge");
  auto trader = b.address("trader");
  b.transfer(s, busy, eth("1"), 3000);
  b.transfer(s, huge, eth("1"), 3000);
  b.transfer(s, trader, eth("1"), 3000);
  for (int i = 0; i < 600; ++i) b.transfer(busy, b.address("x" + std::to_string(i)), eth("0.001"), 4000 + i);
  for (int i = 0; i < 1001; ++i) b.transfer(huge, b.address("y" + std::to_string(i)), eth("0.001"), 4000 + i);
  auto tok = b.create_token(b.address("other"), 10, "benign");
  auto benign = b.create_pool(b.address("other"), tok, 20);
  b.mint(benign, b.address("other"), eth("10"), Wei(1000), 30);
  for (int i = 0; i < 10; ++i) b.swap(benign, trader, eth("0.01"), 5000 + i);
  b.transfer(trader, b.address("behind-boundary"), eth("0.5"), 6000);

  auto snap = DatasetSnapshot::build(b.build());
  auto sc = scan(snap);
  TerminalPolicy pol;
  ScamContext ctx(snap, sc, pol);
  auto net = expand_network({s}, ctx);
  EXPECT_EQ(net.node(busy), nullptr);
  EXPECT_EQ(net.node(huge), nullptr);
  ASSERT_NE(net.node(trader), nullptr);
  EXPECT_TRUE(net.node(trader)->role.has(Role::boundary));
  EXPECT_FALSE(net.node(trader)->expanded);
  EXPECT_EQ(net.node(b.address("behind-boundary")), nullptr);
  auto counts = net.truncation_counts();
  EXPECT_EQ(counts[StopReason::big_node_limited], 1u);
  EXPECT_EQ(counts[StopReason::big_node_dropped], 1u);
  EXPECT_EQ(counts[StopReason::boundary], 1u);
}

TEST(Network, PoisoningDoesNotBridge) {
  LedgerBuilder b("poison", Wei(0));
  auto s = b.address("scammer");
  fixtures::run_scam(b, s, "tok", eth("1"), eth("2"), 1000, 2000);
  auto friend_ = b.address_with_affixes("friend", "ab12", "cd34");
  b.transfer(s, friend_, eth("1"), 3000);
  auto attacker = b.address_with_affixes("attacker", "ab12", "cd34");
  Wei dust(1'000'000'000'000);
  b.transfer(attacker, s, dust, 3100);
  for (int i = 0; i < 50; ++i) b.transfer(attacker, b.address("victim" + std::to_string(i)), dust, 3200 + i);
  auto snap = DatasetSnapshot::build(b.build());
  auto sc = scan(snap);
  TerminalPolicy pol;
  {
    ScamContext ctx(snap, sc, pol);
    auto net = expand_network({s}, ctx);
    EXPECT_EQ(net.nodes.size(), 2u);
  }
  pol.filter_poisoning = false;
  ScamContext ctx(snap, sc, pol);
  auto net = expand_network({s}, ctx);
  EXPECT_EQ(net.nodes.size(), 53u);
}
