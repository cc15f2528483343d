#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "scamgraph/ledger/types.hpp"
#include "scamgraph/similarity/fingerprint.hpp"

namespace scamgraph::sim {

/// Token contracts attributed to one scam cluster.
struct TokenCluster {
  std::string id;
  std::vector<Address> tokens;
};

struct FingerprintSet {
  std::map<Address, ContractFingerprint> usable;
  std::map<Address, std::string> skipped;  // unverified or unparseable, with the reason

  const ContractFingerprint* find(const Address& a) const {
    auto it = usable.find(a);
    return it == usable.end() ? nullptr : &it->second;
  }
};

/// Fingerprints every verified contract, consulting and filling the cache.
inline FingerprintSet fingerprint_contracts(const std::vector<ContractRecord>& contracts, const AstProvider& provider,
                                            FingerprintCache* cache = nullptr) {
  FingerprintSet out;
  for (const auto& c : contracts) {
    if (!c.verified || c.source.empty()) {
      out.skipped[c.address] = "unverified";
      continue;
    }
    if (cache)
      if (const auto* hit = cache->find(c.address)) {
        if (hit->fingerprint) out.usable[c.address] = *hit->fingerprint;
        else out.skipped[c.address] = hit->error;
        continue;
      }
    FingerprintCache::Entry e;
    try {
      e.fingerprint = fingerprint_streams(provider.components(c.source));
      out.usable[c.address] = *e.fingerprint;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::ParseFailure) throw;
      e.error = err.what();
      out.skipped[c.address] = e.error;
    }
    if (cache) cache->put(c.address, std::move(e));
  }
  return out;
}

inline std::vector<const ContractFingerprint*> usable_members(const TokenCluster& c, const FingerprintSet& fps) {
  std::vector<const ContractFingerprint*> out;
  for (const auto& t : c.tokens)
    if (const auto* f = fps.find(t)) out.push_back(f);
  return out;
}

/// Mean Jaccard over all unordered pairs of usable contracts in the cluster.
inline double intra_cluster_similarity(const TokenCluster& c, const FingerprintSet& fps) {
  auto members = usable_members(c, fps);
  if (members.size() < 2)
    throw Error(ErrorCode::InsufficientContracts,
                "cluster " + c.id + " has " + std::to_string(members.size()) + " usable contract(s)");
  double sum = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j, ++pairs) sum += jaccard(*members[i], *members[j]).value();
  return sum / static_cast<double>(pairs);
}

struct InterSampling {
  std::size_t max_tokens_per_cluster = 100;
  std::size_t partner_clusters = 500;
  std::size_t repeats = 10;
  std::uint64_t seed = 7;
};

struct InterClusterScore {
  std::string cluster;
  std::optional<double> score;
  std::string error;  // set when the cluster has no usable contract
};

namespace detail {

template <class T>
std::vector<T> sample(std::vector<T> pool, std::size_t k, std::mt19937_64& rng) {
  if (pool.size() <= k) return pool;
  // partial Fisher-Yates with explicit draws so the result is the same on
  // every standard library
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace detail

/// For each cluster and repeat: sample up to max_tokens of its contracts, up to
/// partner_clusters other clusters and up to max_tokens contracts of each, and
/// average every cross pair. The reported score is the mean over repeats.
/// Each cluster draws from its own generator seeded by (seed, cluster index),
/// so results do not depend on evaluation order.
inline std::vector<InterClusterScore> inter_cluster_similarity(const std::vector<TokenCluster>& clusters,
                                                               const FingerprintSet& fps,
                                                               const InterSampling& params = {}) {
  std::vector<std::vector<const ContractFingerprint*>> members;
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    members.push_back(usable_members(clusters[i], fps));
    if (!members.back().empty()) eligible.push_back(i);
  }
  if (eligible.size() < 2)
    throw Error(ErrorCode::InsufficientContracts, "inter-cluster scoring needs two clusters with usable contracts");

  std::vector<InterClusterScore> out;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    InterClusterScore r;
    r.cluster = clusters[i].id;
    if (members[i].empty()) {
      r.error = "InsufficientContracts";
      out.push_back(std::move(r));
      continue;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(params.seed), static_cast<std::uint32_t>(params.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::vector<std::size_t> partners;
    for (auto e : eligible)
      if (e != i) partners.push_back(e);
    double total = 0;
    for (std::size_t rep = 0; rep < params.repeats; ++rep) {
      auto mine = detail::sample(members[i], params.max_tokens_per_cluster, rng);
      auto chosen = detail::sample(partners, params.partner_clusters, rng);
      double sum = 0;
      std::size_t pairs = 0;
      for (auto p : chosen) {
        auto theirs = detail::sample(members[p], params.max_tokens_per_cluster, rng);
        for (const auto* a : mine)
          for (const auto* b : theirs) sum += jaccard(*a, *b).value(), ++pairs;
      }
      total += pairs ? sum / static_cast<double>(pairs) : 0.0;
    }
    r.score = params.repeats ? total / static_cast<double>(params.repeats) : 0.0;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace scamgraph::sim
