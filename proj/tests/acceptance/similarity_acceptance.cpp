#include <gtest/gtest.h>

#include <random>

#include "support/contracts.hpp"
#include "scamgraph/similarity/fingerprint.hpp"

using namespace scamgraph;
using namespace scamgraph::sim;

namespace {

// distance 1 - num/den compared exactly: d(a,c) <= d(a,b) + d(b,c)
bool triangle_holds(SimilarityScore ab, SimilarityScore bc, SimilarityScore ac) {
  using I = __int128;
  I lhs = static_cast<I>(ac.den - ac.num) * ab.den * bc.den;
  I rhs = (static_cast<I>(ab.den - ab.num) * bc.den + static_cast<I>(bc.den - bc.num) * ab.den) * ac.den;
  return lhs <= rhs;
}

}  // namespace

TEST(Acceptance, C06_SimilarityInvariance) {
  EXPECT_EQ(Keccak256::digest("").hex(), "0xc5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
  EXPECT_EQ(Keccak256::digest("abc").hex(), "0x4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");

  std::mt19937_64 rng(6);
  std::size_t exact = 0;
  for (int i = 0; i < 500; ++i) {
    std::string src = i % 10 == 0 ? scamgraph::testing::kHoneypotToken
                                  : scamgraph::testing::random_contract(rng, 3 + rng() % 6);
    scamgraph::testing::Mutator m(rng(), {"SafeMath"});
    auto clone = m.mutate(src);
    auto score = jaccard(fingerprint(src), fingerprint(clone));
    if (score == SimilarityScore{1, 1}) ++exact;
    else ADD_FAILURE() << "clone " << i << " scored " << score.num << "/" << score.den << "\n" << clone;
  }
  EXPECT_EQ(exact, 500u);

  std::vector<ContractFingerprint> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(fingerprint(scamgraph::testing::random_contract(rng, 2 + rng() % 7)));
  for (int i = 0; i < 500; ++i) {
    const auto& a = pool[rng() % pool.size()];
    const auto& b = pool[rng() % pool.size()];
    const auto& c = pool[rng() % pool.size()];
    EXPECT_TRUE(triangle_holds(jaccard(a, b), jaccard(b, c), jaccard(a, c)));
  }
}
