#include <gtest/gtest.h>

#include "support/recovery.hpp"
#include "scamgraph/ingest/dataset_io.hpp"

using namespace scamgraph;

namespace {

struct Detected {
  DatasetSnapshot snap;
  ScanResult sc;
  std::unique_ptr<FundingIndex> fx;
  std::vector<StarResult> stars;
  std::vector<ChainResult> chains;
  std::vector<MajorFlowResult> flows;
  explicit Detected(const Dataset& d) : snap(DatasetSnapshot::build(d)), sc(scan(snap)) {
    fx = std::make_unique<FundingIndex>(snap, sc);
    stars = detect_stars(*fx);
    chains = detect_chains(*fx);
    flows = detect_major_flows(*fx);
  }
};

}  // namespace

TEST(Synth, SmallSpecRecoveredExactly) {
  PlantSpec spec;
  spec.seed = 42;
  spec.stars = 6;
  spec.chains = 5;
  spec.chain_max = 8;
  spec.flows = 8;
  spec.example_flows = 1;
  spec.clusters = {2, 3};
  spec.wash_swaps = 2;
  spec.noise_addresses = 100;
  spec.noise_transfers = 300;
  spec.noise_pools = 5;
  spec.noise_swaps = 50;
  auto [d, truth] = generate(spec);
  Detected det(d);
  EXPECT_EQ(det.sc.scams.size(), truth.scam_pools.size());
  auto s = recovery::compare(recovery::planted_stars(truth), recovery::detected_stars(det.stars));
  auto c = recovery::compare(recovery::planted_chains(truth), recovery::detected_chains(det.chains));
  auto f = recovery::compare(recovery::planted_flows(truth), recovery::detected_flows(det.flows));
  EXPECT_TRUE(s.perfect()) << s.str();
  EXPECT_TRUE(c.perfect()) << c.str();
  EXPECT_TRUE(f.perfect()) << f.str();
  for (const auto& pf : truth.flows) {
    for (const auto& df : det.flows)
      if (df.vertices == pf.vertices) {
        EXPECT_EQ(df.width, pf.width);
        EXPECT_EQ(df.fund_in, pf.fund_in);
        EXPECT_EQ(df.fund_out, pf.fund_out);
      }
  }
}

TEST(Synth, StarShapeFromSpec) {
  PlantSpec spec;
  spec.stars = 1;
  spec.star_min = spec.star_max = 6;
  spec.seed = 3;
  auto [d, truth] = generate(spec);
  ASSERT_EQ(truth.stars.size(), 1u);
  EXPECT_EQ(truth.stars[0].kind, StarKind::in);
  Detected det(d);
  ASSERT_EQ(det.stars.size(), 1u);
  EXPECT_EQ(det.stars[0].satellites.size(), 6u);
}

TEST(Synth, ExampleFlowAmounts) {
  PlantSpec spec;
  spec.example_flows = 1;
  auto [d, truth] = generate(spec);
  Detected det(d);
  ASSERT_EQ(det.flows.size(), 1u);
  EXPECT_EQ(det.flows[0].size(), 5u);
  EXPECT_EQ(det.flows[0].width, 5u);
  EXPECT_EQ(det.flows[0].fund_in, Wei::parse_ether("20.4"));
  EXPECT_EQ(det.flows[0].fund_out, Wei::parse_ether("20.5"));
}

TEST(Synth, NoiseOnlyFindsNothing) {
  PlantSpec spec;
  spec.noise_addresses = 100;
  spec.noise_transfers = 500;
  spec.noise_pools = 10;
  spec.noise_swaps = 200;
  spec.noise_dust = 20;
  auto [d, truth] = generate(spec);
  Detected det(d);
  EXPECT_TRUE(det.sc.scams.empty());
  EXPECT_TRUE(det.stars.empty() && det.chains.empty() && det.flows.empty());
}

TEST(Synth, Deterministic) {
  PlantSpec spec;
  spec.seed = 9;
  spec.stars = 3;
  spec.chains = 3;
  spec.flows = 3;
  spec.noise_addresses = 50;
  spec.noise_transfers = 100;
  auto a = generate(spec);
  auto b = generate(spec);
  EXPECT_EQ(a.first.transfers, b.first.transfers);
  EXPECT_EQ(a.first.events, b.first.events);
  EXPECT_EQ(a.second.to_json(), b.second.to_json());
  spec.seed = 10;
  EXPECT_NE(generate(spec).first.transfers, a.first.transfers);
}

TEST(Synth, InfeasibleSpecs) {
  auto expect_infeasible = [](PlantSpec s) {
    try {
      generate(s);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InfeasibleSpec);
    }
  };
  PlantSpec s;
  s.chain_min = 1;
  expect_infeasible(s);
  s = {};
  s.flow_width_min = 1;
  expect_infeasible(s);
  s = {};
  s.star_min = 4;
  expect_infeasible(s);
}

TEST(Synth, PlantedClustersAndWash) {
  PlantSpec spec;
  spec.clusters = {2, 3, 5, 8};
  spec.wash_swaps = 3;
  spec.phishing = 1;
  spec.seed = 5;
  auto [d, truth] = generate(spec);
  auto snap = DatasetSnapshot::build(d);
  auto sc = scan(snap);
  auto cl = build_clusters(sc, snap);
  ASSERT_EQ(cl.clusters.size(), 4u);
  std::set<std::vector<Address>> got, want(truth.clusters.begin(), truth.clusters.end());
  for (auto& c : cl.clusters) got.insert(c.members);
  EXPECT_EQ(got, want);
  EXPECT_EQ(truth.wash.size(), 12u);
  EXPECT_EQ(truth.phishing.size(), 4u);
}
