#pragma once

#include <map>
#include <string>

#include "scamgraph/synth/ledger_builder.hpp"

namespace fixtures {

using namespace scamgraph;

inline Wei eth(const char* s) { return Wei::parse_ether(s); }

/// One scammer running one pool end to end: token, pool, add, remove.
struct PoolRun {
  Address token;
  Address pool;
};

inline PoolRun run_scam(LedgerBuilder& b, const Address& who, const std::string& name, Wei add, Wei remove,
                        Timestamp t_add, Timestamp t_remove, Wei lp = Wei(1'000'000)) {
  PoolRun r;
  r.token = b.create_token(who, t_add - 20, name);
  r.pool = b.create_pool(who, r.token, t_add - 10);
  b.mint(r.pool, who, add, lp, t_add);
  b.burn(r.pool, who, remove, lp, t_remove);
  return r;
}

/// The five-address minimal major flow with zero fees: inputs e3df and 9cb0,
/// internal 5a95, outputs fc34 and 9dbb.
struct Example1 {
  LedgerBuilder b{"example-1", Wei(0)};
  std::map<std::string, Address> a;

  Example1() {
    for (const char* n : {"e3df", "9cb0", "5a95", "9dbb", "fc34"}) a[n] = b.address_with_tail(n, n);
    b.transfer(b.address("ext-1"), a["e3df"], eth("10.2"), 1000);
    b.transfer(b.address("ext-2"), a["9cb0"], eth("10.2"), 1000);
    run_scam(b, a["e3df"], "e3df", eth("10"), eth("10.5"), 2000, 3000);
    run_scam(b, a["9cb0"], "9cb0", eth("10"), eth("11.04"), 2000, 3000);
    b.transfer(a["e3df"], a["5a95"], eth("10"), 4000);
    b.transfer(a["9cb0"], a["5a95"], eth("5.2"), 4000);
    b.transfer(a["9cb0"], a["9dbb"], eth("5"), 4000);
    run_scam(b, a["5a95"], "5a95", eth("15"), eth("16.24"), 5000, 6000);
    b.transfer(a["5a95"], a["fc34"], eth("10.35"), 7000);
    b.transfer(a["5a95"], a["9dbb"], eth("5.2"), 7000);
    run_scam(b, a["9dbb"], "9dbb", eth("10"), eth("11"), 8000, 9000);
    run_scam(b, a["fc34"], "fc34", eth("10"), eth("11.2"), 8000, 9000);
    b.transfer(a["9dbb"], b.address("ext-3"), eth("10.2"), 10000);
    b.transfer(a["fc34"], b.address("ext-4"), eth("10.3"), 10000);
  }
};

/// A rug pull whose creator is helped by two wash traders from the same
/// cluster. Fees per leg are configurable; creation fees are zero.
struct Pumpkin {
  struct Fees {
    Wei mint, creator_swap1, creator_swap2, wash1, wash2, burn;
  };
  LedgerBuilder b{"pumpkin", Wei(0)};
  Address creator, wash1, wash2, pool;

  explicit Pumpkin(Fees f = {}) {
    creator = b.address_with_tail("pumpkin-creator", "4c1e");
    wash1 = b.address_with_tail("wash-1", "4b10");
    wash2 = b.address_with_tail("wash-2", "25a1");
    // the wash traders are scammers too, which is what puts them in the cluster
    run_scam(b, wash1, "w1", eth("1"), eth("1.05"), 100, 200);
    run_scam(b, wash2, "w2", eth("1"), eth("1.05"), 100, 200);
    b.transfer(creator, wash1, eth("3.6"), 300);
    b.transfer(creator, wash2, eth("3.6"), 300);
    auto token = b.create_token(creator, 980, "PUMPKIN");
    pool = b.create_pool(creator, token, 990);
    b.mint(pool, creator, eth("1.8"), Wei(1'000'000), 1000, f.mint);
    b.swap(pool, creator, eth("0.1"), 1010, f.creator_swap1);
    b.swap(pool, creator, eth("0.12"), 1020, f.creator_swap2);
    b.swap(pool, wash1, eth("3.56"), 1030, f.wash1);
    b.swap(pool, wash2, eth("3.54"), 1040, f.wash2);
    b.burn(pool, creator, eth("9.27"), Wei(1'000'000), 2000, f.burn);
  }

  /// Creator legs free, wash fees 0.0302 in total.
  static Fees acceptance_fees() { return {Wei(0), Wei(0), Wei(0), eth("0.0151"), eth("0.0151"), Wei(0)}; }
  /// Mint 0.0177, swaps 0.0086 over four swaps, burn 0.0039.
  static Fees reported_fees() {
    return {eth("0.0177"), eth("0.002"), eth("0.002"), eth("0.0023"), eth("0.0023"), eth("0.0039")};
  }
};

/// One scammer, a depositor, and a six-address wash-trading ring that reaches
/// the scammer only through other traders. The exchange is a public label.
struct Gji {
  LedgerBuilder b{"gji", Wei(0)};
  std::map<std::string, Address> a;
  Address exchange, pool;

  Gji() {
    for (const char* n : {"9aa6", "7298", "6b85", "8f33", "381c", "b7f1", "d187", "fa6a", "884f"})
      a[n] = b.address_with_tail(n, n);
    exchange = b.address_with_tail("kucoin", "c0c0");
    b.transfer(exchange, a["9aa6"], eth("7.5"), 100);
    b.transfer(exchange, a["6b85"], eth("1"), 110);
    b.transfer(exchange, a["fa6a"], eth("2"), 120);
    b.transfer(exchange, b.address("unrelated-user"), eth("3"), 130);
    b.transfer(a["fa6a"], a["884f"], eth("1.2"), 200);
    b.transfer(a["fa6a"], a["9aa6"], eth("0.4"), 210);
    auto token = b.create_token(a["9aa6"], 980, "GJI");
    pool = b.create_pool(a["9aa6"], token, 990);
    b.mint(pool, a["9aa6"], eth("7"), Wei(1'000'000), 1000, eth("0.01"));
    b.swap(pool, a["6b85"], eth("0.2"), 1100, eth("0.001"));
    b.swap(pool, a["8f33"], eth("0.1"), 1110, eth("0.001"));
    b.swap(pool, a["8f33"], eth("0.1"), 1120, eth("0.001"));
    b.swap(pool, a["381c"], eth("0.2"), 1130, eth("0.001"));
    b.swap(pool, a["fa6a"], eth("0.3"), 1140, eth("0.001"));
    b.swap(pool, a["884f"], eth("0.3"), 1150, eth("0.001"));
    b.swap(pool, a["b7f1"], eth("1"), 1160, eth("0.001"));
    b.swap(pool, a["d187"], eth("0.15"), 1170, eth("0.001"));
    b.burn(pool, a["9aa6"], eth("9.29"), Wei(1'000'000), 2000, eth("0.01"));
    b.transfer(a["6b85"], a["8f33"], eth("0.79"), 2100);
    b.transfer(a["8f33"], a["381c"], eth("0.56"), 2110);
    b.transfer(a["381c"], a["b7f1"], eth("0.35"), 2120);
    b.transfer(a["884f"], a["b7f1"], eth("0.85"), 2130);
    b.transfer(a["b7f1"], a["d187"], eth("0.19"), 2140);
    b.transfer(a["d187"], a["9aa6"], eth("0.025"), 2150);
    b.transfer(a["9aa6"], a["7298"], eth("9.77"), 2200);
    b.transfer(a["7298"], exchange, eth("9.7"), 2300);
  }

  static Wei wash_total() { return eth("2.35"); }
  static Wei wash_fees() { return eth("0.008"); }
};

}  // namespace fixtures
