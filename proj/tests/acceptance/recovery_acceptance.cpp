#include <gtest/gtest.h>

#include <bitset>
#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "acceptance/common.hpp"
#include "support/recovery.hpp"
#include "scamgraph/cluster/builder.hpp"

using namespace acceptance;

namespace {

PlantSpec large_spec() {
  PlantSpec s;
  s.seed = 2024;
  s.stars = 50;
  s.star_min = 5;
  s.star_max = 20;
  s.chains = 50;
  s.chain_min = 2;
  s.chain_max = 30;
  s.flows = 30;
  s.flow_width_min = 2;
  s.flow_width_max = 5;
  s.clusters = {3, 5, 8};
  s.wash_swaps = 3;
  s.noise_addresses = 5000;
  s.noise_transfers = 20'000;
  s.noise_pools = 40;
  s.noise_swaps = 2000;
  s.noise_dust = 500;
  return s;
}

struct Planted {
  GroundTruth truth;
  std::unique_ptr<Analysed> an;
  std::vector<StarResult> stars;
  std::vector<ChainResult> chains;
  std::vector<MajorFlowResult> flows;
  double seconds = 0;
};

Planted run_planted(const PlantSpec& spec) {
  Stopwatch sw;
  Planted p;
  auto [d, truth] = generate(spec);
  p.truth = std::move(truth);
  p.an = std::make_unique<Analysed>(std::move(d));
  p.stars = detect_stars(*p.an->fx);
  p.chains = detect_chains(*p.an->fx);
  p.flows = detect_major_flows(*p.an->fx);
  p.seconds = sw.seconds();
  return p;
}

const Planted& large() {
  static Planted p = run_planted(large_spec());
  return p;
}

}  // namespace

TEST(Acceptance, C04_PlantedPatternRecovery) {
  const auto& p = large();
  std::set<int> kinds;
  for (const auto& s : p.truth.stars) kinds.insert(static_cast<int>(s.kind));
  ASSERT_EQ(p.truth.stars.size(), 50u);
  // worked-example flows also carry an embedded chain
  ASSERT_GE(p.truth.chains.size(), 50u);
  ASSERT_EQ(p.truth.flows.size(), 30u);
  ASSERT_EQ(kinds.size(), 3u);
  auto s = recovery::compare(recovery::planted_stars(p.truth), recovery::detected_stars(p.stars));
  auto c = recovery::compare(recovery::planted_chains(p.truth), recovery::detected_chains(p.chains));
  auto f = recovery::compare(recovery::planted_flows(p.truth), recovery::detected_flows(p.flows));
  std::printf("  stars %s | chains %s | flows %s | %.1f s\n", s.str().c_str(), c.str().c_str(), f.str().c_str(),
              p.seconds);
  EXPECT_TRUE(s.perfect()) << s.str();
  EXPECT_TRUE(c.perfect()) << c.str();
  EXPECT_TRUE(f.perfect()) << f.str();
  EXPECT_LT(p.seconds, 120.0);
}

namespace {

using Reach = std::bitset<256>;

struct RandomClusterCase {
  Dataset dataset;
  std::vector<Address> scammers;
  std::vector<Reach> adj;
};

/// Scammers grouped into pools (one to three per pool, some in several
/// pools) plus random transfers among them and from outsiders.
RandomClusterCase random_cluster_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uni = [&](std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng() % (hi - lo + 1)); };
  RandomClusterCase c;
  std::size_t n = uni(2, 200);
  LedgerBuilder b("clusters-" + std::to_string(seed), Wei(0));
  for (std::size_t i = 0; i < n; ++i) c.scammers.push_back(b.address("s/" + std::to_string(i)));
  c.adj.assign(n, Reach{});
  auto link = [&](std::size_t x, std::size_t y) {
    c.adj[x][y] = true;
    c.adj[y][x] = true;
  };
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<std::size_t>> pools;
  for (std::size_t i = 0; i < n;) {
    std::size_t k = std::min(uni(1, 3), n - i);
    pools.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(i + k));
    i += k;
  }
  for (std::size_t extra = uni(0, n / 10); extra > 0; --extra) pools.push_back({uni(0, n - 1), uni(0, n - 1)});
  Timestamp t = 10'000;
  Wei one(1'000'000'000'000'000'000);
  for (std::size_t p = 0; p < pools.size(); ++p) {
    auto g = pools[p];
    std::shuffle(g.begin(), g.end(), rng);
    // token creator, pool creator, provider (who also removes); every member gets a role
    std::size_t tc = g[0], pc = g[1 % g.size()], lp = g[2 % g.size()];
    auto token = b.create_token(c.scammers[tc], t, "tok" + std::to_string(p));
    auto pool = b.create_pool(c.scammers[pc], token, t + 1);
    b.mint(pool, c.scammers[lp], one, Wei(1000), t + 2);
    b.burn(pool, c.scammers[lp], one, Wei(1000), t + 100);
    for (auto x : {tc, pc, lp})
      for (auto y : {tc, pc, lp})
        if (x != y) link(x, y);
    t += 1000;
  }
  for (std::size_t e = uni(0, n); e > 0; --e) {
    std::size_t x = uni(0, n - 1), y = uni(0, n - 1);
    if (x == y) continue;
    b.transfer(c.scammers[x], c.scammers[y], one, t + static_cast<Timestamp>(e));
    link(x, y);
  }
  for (std::size_t e = uni(0, n); e > 0; --e)
    b.transfer(b.address("outside/" + std::to_string(e)), c.scammers[uni(0, n - 1)], one, t + 5000 + static_cast<Timestamp>(e));
  c.dataset = b.build();
  return c;
}

}  // namespace

TEST(Acceptance, C05_ClusterOracleAndContainment) {
  std::size_t multi = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto rc = random_cluster_case(seed);
    const std::size_t n = rc.scammers.size();
    // reflexive transitive closure (Warshall over bit rows)
    auto reach = rc.adj;
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (reach[i][k]) reach[i] |= reach[k];
    std::set<std::vector<Address>> want_clusters;
    std::set<Address> want_singletons;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Address> comp;
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][j]) comp.push_back(rc.scammers[j]);
      std::sort(comp.begin(), comp.end());
      if (comp.size() >= 2) want_clusters.insert(comp);
      else want_singletons.insert(comp.front());
    }
    auto snap = DatasetSnapshot::build(rc.dataset);
    auto sc = scan(snap);
    ASSERT_EQ(sc.scammers.size(), n) << "seed " << seed;
    auto set = build_clusters(sc, snap);
    std::set<std::vector<Address>> got;
    for (const auto& c : set.clusters) got.insert(c.members);
    EXPECT_EQ(got, want_clusters) << "seed " << seed;
    EXPECT_EQ(std::set<Address>(set.singletons.begin(), set.singletons.end()), want_singletons) << "seed " << seed;
    multi += want_clusters.size();
  }
  EXPECT_GT(multi, 100u);

  // every detected chain and flow, and every star whose centre is a scammer,
  // lies inside a single cluster
  std::vector<const Planted*> datasets{&large()};
  static std::vector<Planted> extra;
  if (extra.empty())
    for (std::uint64_t seed : {3u, 17u, 99u}) {
      PlantSpec s;
      s.seed = seed;
      s.stars = 9;
      s.chains = 8;
      s.flows = 8;
      s.example_flows = 1;
      s.clusters = {2, 4, 6};
      s.wash_swaps = 2;
      s.phishing = 2;
      s.noise_addresses = 300;
      s.noise_transfers = 1500;
      s.noise_pools = 5;
      s.noise_swaps = 100;
      s.noise_dust = 40;
      extra.push_back(run_planted(s));
    }
  for (const auto& p : extra) datasets.push_back(&p);
  for (const auto* p : datasets) {
    auto set = build_clusters(*p->an->sc, *p->an->snap);
    auto one_cluster = [&](const std::vector<Address>& members) {
      std::optional<std::size_t> id;
      for (const auto& m : members) {
        auto c = set.cluster_of(m);
        if (!c || (id && *id != *c)) return false;
        id = c;
      }
      return true;
    };
    for (const auto& c : p->chains) EXPECT_TRUE(one_cluster(c.members));
    for (const auto& f : p->flows) EXPECT_TRUE(one_cluster(f.vertices));
    std::size_t centred = 0;
    for (const auto& s : p->stars) {
      if (!s.center_is_scammer) continue;
      auto members = s.satellites;
      members.push_back(s.center);
      EXPECT_TRUE(one_cluster(members));
      ++centred;
    }
    EXPECT_GT(centred, 0u);
  }
}
