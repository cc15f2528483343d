#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "scamgraph/patterns/stars.hpp"
#include "scamgraph/synth/ledger_builder.hpp"

namespace scamgraph {

struct PlantSpec {
  std::uint64_t seed = 1;
  Fraction p{9, 10};
  Fraction p_margin{2, 100};  // beneficiary transfers clear p by at least this much

  std::size_t stars = 0;
  std::size_t star_min = 5, star_max = 20;
  Fraction star_scammer_center{1, 2};  // share of stars whose center is itself a scammer

  std::size_t chains = 0;
  std::size_t chain_min = 2, chain_max = 30;

  std::size_t flows = 0;
  std::size_t flow_width_min = 2, flow_width_max = 5;
  std::size_t example_flows = 0;  // additional copies of the five-address worked example

  std::vector<std::size_t> clusters;  // sizes of extra scammer clusters
  std::size_t wash_swaps = 0;         // per cluster, members buying into each other's pools
  std::size_t phishing = 0;           // dust look-alike transfers into cluster members
  bool token_sources = false;         // attach verified source to cluster tokens, one code family per cluster

  std::size_t noise_addresses = 0;
  std::size_t noise_transfers = 0;
  std::size_t noise_pools = 0;
  std::size_t noise_swaps = 0;
  std::size_t noise_dust = 0;

  Wei fee = Wei(1'000'000'000'000'000);
  Timestamp start = 1'600'000'000;
  Timestamp block_seconds = 200'000;  // time reserved per planted structure

  void validate() const {
    auto bad = [](const std::string& m) { throw Error(ErrorCode::InfeasibleSpec, m); };
    if (star_min < 5) bad("stars need at least 5 satellites");
    if (star_min > star_max) bad("star_min > star_max");
    if (chain_min < 2) bad("chains need at least 2 members");
    if (chain_min > chain_max) bad("chain_min > chain_max");
    if (flow_width_min < 2) bad("flows need at least 2 vertices");
    if (flow_width_max > 5) bad("planted flows are limited to width 5 (fan of at most 4)");
    if (flow_width_min > flow_width_max) bad("flow_width_min > flow_width_max");
    for (auto c : clusters)
      if (c < 2) bad("clusters need at least 2 members");
    if (noise_pools && noise_addresses < 2) bad("noise pools need noise addresses");
    if ((noise_transfers || noise_swaps || noise_dust) && noise_addresses < 2) bad("noise needs at least 2 addresses");
    if (block_seconds < 100'000) bad("block_seconds too small for a 30-member chain");
  }

  static PlantSpec from_json(const nlohmann::json& j);
  static PlantSpec load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open plant spec " + path);
    return from_json(nlohmann::json::parse(in));
  }
};

inline PlantSpec PlantSpec::from_json(const nlohmann::json& j) {
  PlantSpec s;
  auto get = [&](const char* k, auto& v) {
    if (j.contains(k)) v = j[k].get<std::decay_t<decltype(v)>>();
  };
  get("seed", s.seed);
  if (j.contains("p")) s.p = Fraction::parse(j["p"].is_string() ? j["p"].get<std::string>() : j["p"].dump());
  get("stars", s.stars);
  get("star_min", s.star_min);
  get("star_max", s.star_max);
  get("chains", s.chains);
  get("chain_min", s.chain_min);
  get("chain_max", s.chain_max);
  get("flows", s.flows);
  get("flow_width_min", s.flow_width_min);
  get("flow_width_max", s.flow_width_max);
  get("example_flows", s.example_flows);
  get("clusters", s.clusters);
  get("wash_swaps", s.wash_swaps);
  get("phishing", s.phishing);
  get("token_sources", s.token_sources);
  get("noise_addresses", s.noise_addresses);
  get("noise_transfers", s.noise_transfers);
  get("noise_pools", s.noise_pools);
  get("noise_swaps", s.noise_swaps);
  get("noise_dust", s.noise_dust);
  get("start", s.start);
  if (j.contains("fee")) s.fee = Wei::parse(j["fee"].get<std::string>());
  return s;
}

struct PlantedStar {
  StarKind kind;
  Address center;
  std::vector<Address> satellites;  // sorted
  bool center_is_scammer = false;
};

struct PlantedChain {
  std::vector<Address> members;
};

struct PlantedFlow {
  std::vector<Address> vertices;  // sorted
  std::vector<TxHash> edges;
  std::size_t width = 0;
  Wei fund_in, fund_out;
};

struct PlantedWash {
  Address pool;
  Address trader;
  Wei amount;
};

struct GroundTruth {
  std::vector<std::pair<Address, std::vector<Address>>> scam_pools;  // pool -> roles
  std::vector<PlantedStar> stars;
  std::vector<PlantedChain> chains;
  std::vector<PlantedFlow> flows;
  std::vector<std::vector<Address>> clusters;  // planted cluster groups, sorted members
  std::vector<PlantedWash> wash;
  std::vector<TxHash> phishing;
  std::vector<Address> noise;

  nlohmann::json to_json() const {
    using nlohmann::json;
    auto addrs = [](const std::vector<Address>& v) {
      json a = json::array();
      for (const auto& x : v) a.push_back(x.hex());
      return a;
    };
    json j;
    j["scam_pools"] = json::array();
    for (const auto& [p, r] : scam_pools) j["scam_pools"].push_back({{"pool", p.hex()}, {"roles", addrs(r)}});
    j["stars"] = json::array();
    for (const auto& s : stars)
      j["stars"].push_back({{"kind", to_string(s.kind)}, {"center", s.center.hex()}, {"satellites", addrs(s.satellites)},
                            {"center_is_scammer", s.center_is_scammer}});
    j["chains"] = json::array();
    for (const auto& c : chains) j["chains"].push_back({{"members", addrs(c.members)}});
    j["flows"] = json::array();
    for (const auto& f : flows) {
      json e = json::array();
      for (const auto& h : f.edges) e.push_back(h.hex());
      j["flows"].push_back({{"vertices", addrs(f.vertices)}, {"edges", e}, {"width", f.width},
                            {"fund_in", f.fund_in.str()}, {"fund_out", f.fund_out.str()}});
    }
    j["clusters"] = json::array();
    for (const auto& c : clusters) j["clusters"].push_back(addrs(c));
    j["wash"] = json::array();
    for (const auto& w : wash)
      j["wash"].push_back({{"pool", w.pool.hex()}, {"trader", w.trader.hex()}, {"amount", w.amount.str()}});
    j["phishing"] = json::array();
    for (const auto& h : phishing) j["phishing"].push_back(h.hex());
    j["noise_addresses"] = noise.size();
    return j;
  }
};

/// Plants scams and patterns into a fresh ledger. Every planted address is
/// derived from the seed, and every pattern gets its own time block so that
/// structures never see each other's transfers.
class Synthesizer {
public:
  explicit Synthesizer(const PlantSpec& spec)
      : spec_(spec), rng_(spec.seed), b_("synth-" + std::to_string(spec.seed), spec.fee) {
    spec_.validate();
  }

  std::pair<Dataset, GroundTruth> run() {
    t_ = spec_.start;
    for (std::size_t i = 0; i < spec_.stars; ++i) plant_star(static_cast<StarKind>(i % 3));
    for (std::size_t i = 0; i < spec_.chains; ++i) plant_chain(uniform(spec_.chain_min, spec_.chain_max));
    for (std::size_t i = 0; i < spec_.flows; ++i) plant_flow(uniform(spec_.flow_width_min, spec_.flow_width_max));
    for (std::size_t i = 0; i < spec_.example_flows; ++i) plant_example_flow();
    for (auto size : spec_.clusters) plant_cluster(size);
    plant_noise();
    Dataset d = b_.build();
    d.manifest.collection_start = spec_.start;
    d.manifest.collection_end = t_ + spec_.block_seconds;
    return {std::move(d), std::move(truth_)};
  }

private:
  struct Run {
    Address pool;
    Wei cost, revenue;
    Timestamp start, end;
  };

  static Wei milli(std::int64_t m) { return Wei(static_cast<Wei::rep>(m) * 1'000'000'000'000'000); }

  std::size_t uniform(std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng_() % (hi - lo + 1)); }
  std::int64_t uniform_i(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(Fraction f) { return static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(f.den)) < f.num; }

  Address fresh(const char* role) { return b_.address(std::string(role) + "/" + std::to_string(counter_++)); }
  Timestamp next_block() {
    Timestamp t = t_;
    t_ += spec_.block_seconds;
    return t;
  }

  /// A one-day rug pull by a single address: mint at t, burn at t + 500.
  Run scam(const Address& who, Timestamp t, Wei add, Wei remove, std::string source = {}) {
    auto token = b_.create_token(who, t - 20, "tok" + std::to_string(counter_++), std::move(source));
    auto pool = b_.create_pool(who, token, t - 10);
    b_.mint(pool, who, add, Wei(1'000'000), t);
    b_.burn(pool, who, remove, Wei(1'000'000), t + 500);
    truth_.scam_pools.push_back({pool, {who}});
    return {pool, add + 3 * spec_.fee, remove - spec_.fee, t, t + 500};
  }
  Run random_scam(const Address& who, Timestamp t, std::string source = {}) {
    std::int64_t add = uniform_i(1'000, 20'000);
    std::int64_t remove = add + add * uniform_i(5, 50) / 100;
    return scam(who, t, milli(add), milli(remove), std::move(source));
  }

  // A token contract from code family `family`. Members of one family share
  // most functions; `variant` swaps in one function of its own. Drawn from a
  // private generator so enabling sources leaves the ledger unchanged.
  std::string token_source(std::size_t family, std::size_t variant) const {
    static const char* const kBodies[] = {
        "function transfer(address to, uint256 amount) public returns (bool) { require(balanceOf[msg.sender] >= amount); balanceOf[msg.sender] -= amount; balanceOf[to] += amount; emit Transfer(msg.sender, to, amount); return true; }",
        "function approve(address spender, uint256 amount) public returns (bool) { allowance[msg.sender][spender] = amount; return true; }",
        "function transferFrom(address from, address to, uint256 amount) public returns (bool) { require(allowance[from][msg.sender] >= amount); allowance[from][msg.sender] -= amount; balanceOf[from] -= amount; balanceOf[to] += amount; return true; }",
        "function setFee(uint256 fee) public onlyOwner { taxFee = fee; }",
        "function blacklist(address who) public onlyOwner { blocked[who] = true; }",
        "function mint(address to, uint256 amount) public onlyOwner { totalSupply += amount; balanceOf[to] += amount; }",
        "function renounce() public onlyOwner { owner = address(0); }",
        "function openTrading() public onlyOwner { tradingOpen = true; launchedAt = block.number; }",
        "function setMaxTx(uint256 amount) public onlyOwner { maxTx = amount * 10 ** 9; }",
        "function withdraw() public onlyOwner { payable(owner).transfer(address(this).balance); }",
        "function burn(uint256 amount) public { balanceOf[msg.sender] -= amount; totalSupply -= amount; }",
        "function isBlocked(address who) public view returns (bool) { return blocked[who]; }",
        "function skim(address to) public onlyOwner { for (uint256 i = 0; i < holders.length; i++) { balanceOf[holders[i]] = 0; } balanceOf[to] = totalSupply; }",
        "function setRouter(address r) public onlyOwner { router = r; }",
        "function excludeFromFee(address who) public onlyOwner { feeExempt[who] = true; }",
        "function rescue(uint256 amount) public { require(msg.sender == owner || msg.sender == marketing); payable(marketing).transfer(amount); }",
    };
    constexpr std::size_t n = sizeof(kBodies) / sizeof(kBodies[0]);
    std::mt19937_64 fam(spec_.seed * 1'000'003 + family);
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    std::shuffle(pick.begin(), pick.end(), fam);
    std::string src =
        "pragma solidity ^0.8.0;\n"
        "contract Token {\n"
        "  address public owner; address public router; address public marketing; uint256 public totalSupply;\n"
        "  uint256 public taxFee; uint256 public maxTx; uint256 public launchedAt; bool public tradingOpen;\n"
        "  address[] public holders;\n"
        "  mapping(address => uint256) public balanceOf; mapping(address => mapping(address => uint256)) public allowance;\n"
        "  mapping(address => bool) public blocked; mapping(address => bool) public feeExempt;\n"
        "  event Transfer(address indexed from, address indexed to, uint256 value);\n"
        "  modifier onlyOwner() { require(msg.sender == owner); _; }\n"
        "  constructor() { owner = msg.sender; totalSupply = " + std::to_string(1'000'000 + family) + " * 10 ** 9; balanceOf[msg.sender] = totalSupply; }\n";
    for (std::size_t i = 0; i < 6; ++i) src += std::string("  ") + kBodies[pick[i]] + "\n";
    src += std::string("  ") + kBodies[pick[6 + variant % (n - 6)]] + "\n";
    return src + "}\n";
  }
  /// An amount in [(p + margin) * r, r], so it covers the revenue on its own.
  Wei beneficiary_amount(Wei r) {
    Fraction q{spec_.p.num * spec_.p_margin.den + spec_.p_margin.num * spec_.p.den, spec_.p.den * spec_.p_margin.den};
    if (q.num > q.den) q = {1, 1};
    Wei lo = Wei((r.raw() * q.num + q.den - 1) / q.den);
    Wei span = r - lo;
    return span.raw() <= 0 ? r : lo + Wei(static_cast<Wei::rep>(rng_() % static_cast<std::uint64_t>(span.raw() + 1)));
  }
  void fund_externally(const Address& who, const Run& r, Timestamp t) {
    b_.transfer(fresh("src"), who, r.cost + milli(uniform_i(1, 500)), t);
  }
  void pay_out_externally(const Address& who, const Run& r, Timestamp t) {
    b_.transfer(who, fresh("sink"), beneficiary_amount(r.revenue), t);
  }

  // Centre funds at +0, satellites scam at +1000, centre scams at +3000, satellites pay at +5000.
  void plant_star(StarKind kind) {
    Timestamp base = next_block();
    std::size_t n = uniform(spec_.star_min, spec_.star_max);
    bool scammer_center = chance(spec_.star_scammer_center);
    PlantedStar ps{kind, fresh("center"), {}, scammer_center};
    bool funds = kind == StarKind::out || kind == StarKind::in_out;
    bool receives = kind == StarKind::in || kind == StarKind::in_out;
    for (std::size_t i = 0; i < n; ++i) {
      Address s = fresh("sat");
      ps.satellites.push_back(s);
      // costs are drawn before funding, so compute the scam up front
      Run r = random_scam(s, base + 1000 + static_cast<Timestamp>(i));
      if (funds)
        b_.transfer(ps.center, s, r.cost + milli(uniform_i(0, 500)), base + static_cast<Timestamp>(i));
      else
        fund_externally(s, r, base + static_cast<Timestamp>(i));
      Timestamp pay = base + 5000 + static_cast<Timestamp>(i);
      if (receives)
        b_.transfer(s, ps.center, beneficiary_amount(r.revenue), pay);
      else
        pay_out_externally(s, r, pay);
    }
    if (scammer_center) {
      Run r = random_scam(ps.center, base + 3000);
      fund_externally(ps.center, r, base - 1000);
      pay_out_externally(ps.center, r, base + 6000);
    }
    std::sort(ps.satellites.begin(), ps.satellites.end());
    truth_.stars.push_back(std::move(ps));
  }

  // Member i scams at +1000*i; the link to i+1 is its only outflow and is
  // smaller than i+1's cost, topped up by a smaller outside transfer.
  void plant_chain(std::size_t len) {
    Timestamp base = next_block() + 1000;
    PlantedChain pc;
    std::vector<Run> runs;
    for (std::size_t i = 0; i < len; ++i) {
      pc.members.push_back(fresh("link"));
      runs.push_back(random_scam(pc.members.back(), base + 1000 * static_cast<Timestamp>(i)));
    }
    fund_externally(pc.members[0], runs[0], base - 500);
    for (std::size_t i = 0; i + 1 < len; ++i) {
      const Run& next = runs[i + 1];
      Wei link = Wei(next.cost.raw() * 7 / 10);
      Wei topup = next.cost - link + milli(1);
      b_.transfer(pc.members[i], pc.members[i + 1], link, runs[i].end + 200);
      b_.transfer(fresh("topup"), pc.members[i + 1], topup, next.start - 100);
    }
    pay_out_externally(pc.members.back(), runs.back(), runs.back().end + 200);
    truth_.chains.push_back(std::move(pc));
  }

  void plant_flow(std::size_t width) {
    if (width == 5 && chance({1, 3})) return plant_example_flow();
    Timestamp base = next_block() + 1000;
    std::size_t k = width - 1;
    PlantedFlow pf;
    pf.width = width;
    Address hub = fresh("hub");
    std::vector<Address> leaves;
    for (std::size_t i = 0; i < k; ++i) leaves.push_back(fresh("leaf"));
    if (chance({1, 2}) || k == 1) {
      // fan-in: leaves scam first and each pays the hub everything it needs
      std::vector<Wei> v;
      Wei sum, min_v;
      for (std::size_t i = 0; i < k; ++i) {
        Run r = random_scam(leaves[i], base + static_cast<Timestamp>(i));
        Wei f = r.cost + milli(uniform_i(1, 500));
        b_.transfer(fresh("src"), leaves[i], f, base - 500);
        pf.fund_in += f;
        v.push_back(beneficiary_amount(r.revenue));
        sum += v.back();
        min_v = i == 0 ? v.back() : std::min(min_v, v.back());
      }
      // hub cost lies in (sum - min, sum] so the hub needs every leaf
      Wei hub_cost = sum - Wei(min_v.raw() / 2);
      Timestamp hub_t = base + 3000;
      Wei remove = hub_cost + Wei(hub_cost.raw() / 5);
      Run hr = scam(hub, hub_t, hub_cost - 3 * spec_.fee, Wei(remove.raw()));
      for (std::size_t i = 0; i < k; ++i)
        pf.edges.push_back(b_.transfer(leaves[i], hub, v[i], base + 1000 + static_cast<Timestamp>(i)).tx_hash);
      // an outside transfer after the hub starts keeps the leaf links out of the chain rule
      b_.transfer(fresh("decoy"), hub, std::max(sum, hr.cost) + milli(1000), hr.start + 100);
      Wei out = beneficiary_amount(hr.revenue);
      b_.transfer(hub, fresh("sink"), out, hr.end + 1000);
      pf.fund_out = out;
    } else {
      // fan-out: the hub's revenue needs every leaf payment to reach p
      Run hr = random_scam(hub, base);
      Wei f = hr.cost + milli(uniform_i(1, 500));
      b_.transfer(fresh("src"), hub, f, base - 500);
      pf.fund_in = f;
      std::vector<Run> lr;
      std::vector<Wei> v;
      Wei sum, min_v;
      for (std::size_t i = 0; i < k; ++i) {
        lr.push_back(random_scam(leaves[i], base + 3000 + static_cast<Timestamp>(i)));
        v.push_back(lr.back().cost + milli(uniform_i(0, 100)));
        sum += v.back();
        min_v = i == 0 ? v.back() : std::min(min_v, v.back());
      }
      // revenue r with p*r in (sum - min, sum]
      Wei target = sum - Wei(min_v.raw() / 2);
      Wei revenue = Wei(target.raw() * spec_.p.den / spec_.p.num);
      // re-issue the hub's burn with the derived revenue
      replace_burn(hr, revenue + spec_.fee);
      for (std::size_t i = 0; i < k; ++i) {
        pf.edges.push_back(b_.transfer(hub, leaves[i], v[i], hr.end + 1000 + static_cast<Timestamp>(i)).tx_hash);
        b_.transfer(fresh("decoy"), leaves[i], v[i] + milli(1000), lr[i].start + 100);
        Wei out = beneficiary_amount(lr[i].revenue);
        b_.transfer(leaves[i], fresh("sink"), out, lr[i].end + 1000);
        pf.fund_out += out;
      }
    }
    pf.vertices = leaves;
    pf.vertices.push_back(hub);
    std::sort(pf.vertices.begin(), pf.vertices.end());
    truth_.flows.push_back(std::move(pf));
  }

  void replace_burn(Run& r, Wei remove) {
    auto& ev = b_.dataset().events;
    for (auto& e : ev)
      if (e.pool == r.pool && e.kind == PoolEventKind::burn) e.amount_native = remove;
    r.revenue = remove - spec_.fee;
  }

  /// The worked five-address example with its amounts; it also carries one
  /// max-in-max-out chain.
  void plant_example_flow() {
    Timestamp base = next_block();
    auto m = [](const char* eth) { return Wei::parse_ether(eth); };
    Address e3df = fresh("ex"), c9cb0 = fresh("ex"), a5a95 = fresh("ex"), d9dbb = fresh("ex"), fc34 = fresh("ex");
    PlantedFlow pf;
    pf.width = 5;
    b_.transfer(fresh("src"), e3df, m("10.2"), base + 1000);
    b_.transfer(fresh("src"), c9cb0, m("10.2"), base + 1000);
    scam(e3df, base + 2000, m("10"), m("10.5"));
    scam(c9cb0, base + 2000, m("10"), m("11.04"));
    pf.edges.push_back(b_.transfer(e3df, a5a95, m("10"), base + 4000).tx_hash);
    pf.edges.push_back(b_.transfer(c9cb0, a5a95, m("5.2"), base + 4000).tx_hash);
    pf.edges.push_back(b_.transfer(c9cb0, d9dbb, m("5"), base + 4000).tx_hash);
    scam(a5a95, base + 5000, m("15"), m("16.24"));
    pf.edges.push_back(b_.transfer(a5a95, fc34, m("10.35"), base + 7000).tx_hash);
    pf.edges.push_back(b_.transfer(a5a95, d9dbb, m("5.2"), base + 7000).tx_hash);
    scam(d9dbb, base + 8000, m("10"), m("11"));
    scam(fc34, base + 8000, m("10"), m("11.2"));
    b_.transfer(d9dbb, fresh("sink"), m("10.2"), base + 10000);
    b_.transfer(fc34, fresh("sink"), m("10.3"), base + 10000);
    pf.fund_in = m("20.4");
    pf.fund_out = m("20.5");
    pf.vertices = {e3df, c9cb0, a5a95, d9dbb, fc34};
    std::sort(pf.vertices.begin(), pf.vertices.end());
    truth_.flows.push_back(std::move(pf));
    truth_.chains.push_back({{e3df, a5a95, fc34}});
  }

  // Members are funded and paid out from outside; the cluster links are small
  // transfers sent while the sender's pool is live, so no funding set or
  // largest-transfer rule ever sees them.
  void plant_cluster(std::size_t size) {
    Timestamp base = next_block() + 1000;
    std::vector<Address> members;
    std::vector<Run> runs;
    std::size_t family = truth_.clusters.size();
    for (std::size_t i = 0; i < size; ++i) {
      members.push_back(fresh("member"));
      runs.push_back(random_scam(members.back(), base + 1000 * static_cast<Timestamp>(i),
                                 spec_.token_sources ? token_source(family, i) : std::string{}));
      fund_externally(members.back(), runs.back(), base - 500);
    }
    std::vector<Address> sinks;
    for (std::size_t i = 0; i < size; ++i) {
      sinks.push_back(fresh("sink"));
      b_.transfer(members[i], sinks.back(), beneficiary_amount(runs[i].revenue), runs[i].end + 100'000);
    }
    auto link = [&](std::size_t from, std::size_t to) {
      b_.transfer(members[from], members[to], milli(1), runs[from].start + 1 + static_cast<Timestamp>(rng_() % 400));
    };
    for (std::size_t i = 1; i < size; ++i) {
      std::size_t j = uniform(0, i - 1);
      rng_() % 2 ? link(i, j) : link(j, i);
    }
    for (std::size_t e = 0; e < size / 2; ++e) {
      std::size_t a = uniform(0, size - 1), c = uniform(0, size - 1);
      if (a != c) link(a, c);
    }
    for (std::size_t w = 0; w < spec_.wash_swaps; ++w) {
      std::size_t owner = uniform(0, size - 1), trader = uniform(0, size - 1);
      if (owner == trader) trader = (trader + 1) % size;
      Wei amount = milli(uniform_i(10, 2000));
      b_.swap(runs[owner].pool, members[trader], amount, runs[owner].start + 1 + static_cast<Timestamp>(rng_() % 400));
      truth_.wash.push_back({runs[owner].pool, members[trader], amount});
    }
    for (std::size_t k = 0; k < spec_.phishing; ++k) {
      std::size_t victim = uniform(0, size - 1);
      std::string h = sinks[victim].hex();
      Address mimic = b_.address_with_affixes("mimic/" + std::to_string(counter_++), h.substr(2, 4), h.substr(38, 4));
      truth_.phishing.push_back(b_.transfer(mimic, members[victim], Wei(0), runs[victim].end + 100'100).tx_hash);
    }
    std::sort(members.begin(), members.end());
    truth_.clusters.push_back(std::move(members));
  }

  // Noise addresses only ever touch each other and benign pools (two mints,
  // so never a one-day rug pull).
  void plant_noise() {
    if (spec_.noise_addresses == 0) return;
    Timestamp base = next_block();
    auto& noise = truth_.noise;
    for (std::size_t i = 0; i < spec_.noise_addresses; ++i) noise.push_back(b_.address("noise/" + std::to_string(i)));
    auto pick = [&] { return noise[uniform(0, noise.size() - 1)]; };
    Timestamp span = spec_.block_seconds;
    for (std::size_t i = 0; i < spec_.noise_transfers; ++i) {
      Address a = pick(), c = pick();
      if (a == c) continue;
      b_.transfer(a, c, milli(uniform_i(1, 5000)), base + static_cast<Timestamp>(rng_() % span));
    }
    std::vector<Address> pools;
    for (std::size_t i = 0; i < spec_.noise_pools; ++i) {
      Address owner = pick();
      auto token = b_.create_token(owner, base, "benign" + std::to_string(i));
      auto pool = b_.create_pool(owner, token, base + 1);
      b_.mint(pool, owner, milli(uniform_i(1000, 50'000)), Wei(1'000'000), base + 2);
      b_.mint(pool, pick(), milli(uniform_i(1000, 50'000)), Wei(500'000), base + 3);
      pools.push_back(pool);
    }
    for (std::size_t i = 0; pools.size() && i < spec_.noise_swaps; ++i) {
      Wei amount = milli(uniform_i(1, 1000));
      if (rng_() % 2) amount = -amount;
      b_.swap(pools[uniform(0, pools.size() - 1)], pick(), amount, base + 10 + static_cast<Timestamp>(rng_() % span));
    }
    for (std::size_t i = 0; i < spec_.noise_dust; ++i) {
      Address a = pick(), c = pick();
      if (a != c) b_.transfer(a, c, Wei(0), base + static_cast<Timestamp>(rng_() % span));
    }
  }

  PlantSpec spec_;
  std::mt19937_64 rng_;
  LedgerBuilder b_;
  GroundTruth truth_;
  Timestamp t_ = 0;
  std::uint64_t counter_ = 0;
};

inline std::pair<Dataset, GroundTruth> generate(const PlantSpec& spec) { return Synthesizer(spec).run(); }

}  // namespace scamgraph
