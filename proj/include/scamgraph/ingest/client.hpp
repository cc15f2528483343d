#pragma once

#include <chrono>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "scamgraph/ingest/decoder.hpp"
#include "scamgraph/ledger/snapshot.hpp"

namespace scamgraph {

struct Clock {
  virtual ~Clock() = default;
  virtual double now() = 0;  // seconds
  virtual void sleep(double seconds) = 0;
};

struct SystemClock final : Clock {
  double now() override {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
  }
  void sleep(double s) override {
    if (s > 0) std::this_thread::sleep_for(std::chrono::duration<double>(s));
  }
};

/// Time only moves when someone sleeps. Used with recorded transcripts.
struct ManualClock final : Clock {
  double t = 0;
  double now() override { return t; }
  void sleep(double s) override {
    if (s > 0) t += s;
  }
};

/// Evenly spaced requests: at most `rate` per second, shared by all callers.
class RateLimiter {
public:
  RateLimiter(double rate, Clock& clock) : interval_(1.0 / rate), clock_(&clock) {
    if (!(rate > 0)) throw Error(ErrorCode::InvalidConfig, "max_requests_per_second must be positive");
  }
  void acquire() {
    double wait = 0;
    {
      std::lock_guard lock(mu_);
      double t = clock_->now();
      double slot = std::max(t, next_);
      next_ = slot + interval_;
      wait = slot - t;
    }
    clock_->sleep(wait);
  }

private:
  double interval_;
  Clock* clock_;
  double next_ = -1e300;
  std::mutex mu_;
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

struct Transport {
  virtual ~Transport() = default;
  /// `query` is everything after the base URL, starting with '?'.
  virtual HttpResponse get(const std::string& query) = 0;
};

/// Replays a recorded transcript in order. Each entry names a substring the
/// request must contain; a mismatch is reported as a transport failure.
class MockTransport final : public Transport {
public:
  struct Entry {
    std::string match;
    int status = 200;
    std::string body;
    bool fail = false;  // simulate a connection error
  };
  struct Seen {
    std::string query;
    double at;
  };

  explicit MockTransport(Clock& clock) : clock_(&clock) {}
  void push(Entry e) { script_.push_back(std::move(e)); }
  void push(std::string match, nlohmann::json body, int status = 200) { push({std::move(match), status, body.dump()}); }

  /// [{"match": "...", "status": 200, "body": {...}, "fail": false}, ...]
  static std::unique_ptr<MockTransport> from_file(const std::string& path, Clock& clock) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open transcript " + path);
    auto j = nlohmann::json::parse(in);
    auto m = std::make_unique<MockTransport>(clock);
    for (const auto& e : j) {
      Entry x;
      x.match = e.value("match", "");
      x.status = e.value("status", 200);
      x.fail = e.value("fail", false);
      if (e.contains("body")) x.body = e["body"].is_string() ? e["body"].get<std::string>() : e["body"].dump();
      m->push(std::move(x));
    }
    return m;
  }

  HttpResponse get(const std::string& query) override {
    std::lock_guard lock(mu_);
    seen_.push_back({query, clock_->now()});
    if (script_.empty()) throw Error(ErrorCode::Transport, "transcript exhausted at " + query);
    Entry e = std::move(script_.front());
    script_.pop_front();
    if (query.find(e.match) == std::string::npos)
      throw Error(ErrorCode::Transport, "unexpected request " + query + " (transcript expects " + e.match + ")");
    if (e.fail) throw Error(ErrorCode::Transport, "simulated connection failure");
    return {e.status, e.body};
  }

  const std::vector<Seen>& requests() const { return seen_; }
  std::size_t remaining() const { return script_.size(); }

private:
  Clock* clock_;
  std::deque<Entry> script_;
  std::vector<Seen> seen_;
  std::mutex mu_;
};

struct RetryPolicy {
  int max_attempts = 4;
  double initial_backoff = 1.0;  // seconds, doubled after every failure
  double multiplier = 2.0;
};

struct ApiClientConfig {
  std::string base_url = "https://api.etherscan.io/api";
  std::string api_key;
  double max_requests_per_second = 5;
  std::size_t max_events_per_pool = 1000;
  RetryPolicy retry;
  bool resolve_tx_senders = true;  // look up the EOA behind each pool event

  void validate() const {
    if (max_events_per_pool < 1) throw Error(ErrorCode::InvalidConfig, "max_events_per_pool must be at least 1");
    if (!(max_requests_per_second > 0)) throw Error(ErrorCode::InvalidConfig, "max_requests_per_second must be positive");
    if (retry.max_attempts < 1) throw Error(ErrorCode::InvalidConfig, "retry attempts must be at least 1");
  }
};

struct PoolEvents {
  std::vector<PoolEventRecord> events;
  bool truncated = false;
  std::size_t unrecognized = 0;
};

/// Etherscan-style HTTP API. Every request goes through the shared rate
/// limiter and the retry policy.
class EtherscanClient {
public:
  EtherscanClient(ApiClientConfig cfg, Transport& transport, Clock& clock)
      : cfg_(std::move(cfg)), transport_(&transport), clock_(&clock), limiter_(cfg_.max_requests_per_second, clock) {
    cfg_.validate();
  }

  std::size_t attempts() const { return attempts_; }
  const ApiClientConfig& config() const { return cfg_; }

  std::vector<NativeTransfer> txlist(const Address& a) {
    std::vector<NativeTransfer> out;
    for (const auto& r : list(account_query("txlist", a))) {
      NativeTransfer t;
      t.tx_hash = hash(r, "hash");
      t.block = std::stoull(r.at("blockNumber").get<std::string>());
      t.timestamp = std::stoll(r.at("timeStamp").get<std::string>());
      t.sender = Address::parse(r.at("from").get<std::string>());
      auto to = r.value("to", std::string());
      if (to.empty()) {
        auto ca = r.value("contractAddress", std::string());
        if (ca.empty()) continue;
        to = ca;
      }
      t.receiver = Address::parse(to);
      bool failed = r.value("isError", "0") == "1";
      t.value = failed ? Wei(0) : Wei::parse(r.at("value").get<std::string>());
      t.gas_fee = Wei::parse(r.at("gasUsed").get<std::string>()) * Wei::parse(r.at("gasPrice").get<std::string>()).raw();
      t.kind = TransferKind::normal;
      out.push_back(t);
    }
    return out;
  }

  std::vector<NativeTransfer> txlist_internal(const Address& a) {
    std::vector<NativeTransfer> out;
    std::map<TxHash, std::uint32_t> seq;
    for (const auto& r : list(account_query("txlistinternal", a))) {
      if (r.value("isError", "0") == "1") continue;
      auto to = r.value("to", std::string());
      if (to.empty()) continue;
      NativeTransfer t;
      t.tx_hash = hash(r, "hash");
      t.block = std::stoull(r.at("blockNumber").get<std::string>());
      t.timestamp = std::stoll(r.at("timeStamp").get<std::string>());
      t.sender = Address::parse(r.at("from").get<std::string>());
      t.receiver = Address::parse(to);
      t.value = Wei::parse(r.at("value").get<std::string>());
      t.kind = TransferKind::internal;
      t.log_index = 1 + seq[t.tx_hash]++;
      out.push_back(t);
    }
    return out;
  }

  /// First max_events_per_pool logs of the pool, decoded. Unknown topics are
  /// counted and skipped.
  PoolEvents pool_events(const ExchangePool& pool) {
    std::string q = "?module=logs&action=getLogs&address=" + pool.address.hex() +
                    "&fromBlock=0&toBlock=latest&page=1&offset=" + std::to_string(cfg_.max_events_per_pool) + key();
    auto rows = list(q);
    PoolEvents out;
    out.truncated = rows.size() >= cfg_.max_events_per_pool;
    if (rows.size() > cfg_.max_events_per_pool) rows.erase(rows.begin() + static_cast<long>(cfg_.max_events_per_pool), rows.end());
    for (const auto& r : rows) {
      RawEventLog raw;
      raw.pool = Address::parse(r.at("address").get<std::string>());
      for (const auto& t : r.at("topics")) {
        if (t.is_null()) continue;
        auto b = Bytes32::try_parse(t.get<std::string>());
        if (!b) throw Error(ErrorCode::InconsistentResponse, "bad topic");
        raw.topics.push_back(*b);
      }
      auto data = evm::bytes_from_hex(r.at("data").get<std::string>());
      if (!data) throw Error(ErrorCode::InconsistentResponse, "bad log data");
      raw.data = std::move(*data);
      raw.block = evm::quantity(r.at("blockNumber").get<std::string>());
      raw.timestamp = static_cast<Timestamp>(evm::quantity(r.at("timeStamp").get<std::string>()));
      raw.log_index = static_cast<std::uint32_t>(evm::quantity(r.value("logIndex", std::string("0x0"))));
      raw.tx_hash = hash(r, "transactionHash");
      if (r.contains("gasUsed") && r.contains("gasPrice"))
        raw.gas_fee = Wei(static_cast<Wei::rep>(evm::quantity(r["gasUsed"].get<std::string>())) *
                          static_cast<Wei::rep>(evm::quantity(r["gasPrice"].get<std::string>())));
      if (cfg_.resolve_tx_senders && !raw.topics.empty() && raw.topics[0] != evm::transfer_topic())
        raw.tx_from = tx_sender(raw.tx_hash);
      auto decoded = decode_event(raw, pool.native_side);
      if (auto* e = std::get_if<PoolEventRecord>(&decoded))
        out.events.push_back(*e);
      else
        ++out.unrecognized;
    }
    attach_lp_amounts(out.events);
    return out;
  }

  Address tx_sender(const TxHash& tx) {
    if (auto it = senders_.find(tx); it != senders_.end()) return it->second;
    auto j = call("?module=proxy&action=eth_getTransactionByHash&txhash=" + tx.hex() + key());
    const auto& res = j.at("result");
    if (!res.is_object()) throw Error(ErrorCode::InconsistentResponse, "no transaction " + tx.hex());
    auto from = Address::parse(res.at("from").get<std::string>());
    senders_.emplace(tx, from);
    return from;
  }

  /// Verified source or an unverified record with empty source.
  ContractRecord contract_source(const Address& a) {
    auto rows = list("?module=contract&action=getsourcecode&address=" + a.hex() + key());
    ContractRecord c;
    c.address = a;
    if (!rows.empty()) {
      c.source = rows[0].value("SourceCode", std::string());
      c.verified = !c.source.empty();
    }
    return c;
  }

  struct Creation {
    Address creator;
    TxHash tx;
    std::optional<Timestamp> at;
  };
  Creation contract_creation(const Address& a) {
    auto rows = list("?module=contract&action=getcontractcreation&contractaddresses=" + a.hex() + key());
    if (rows.empty()) throw Error(ErrorCode::InconsistentResponse, "no creation record for " + a.hex());
    Creation c;
    c.creator = Address::parse(rows[0].at("contractCreator").get<std::string>());
    c.tx = hash(rows[0], "txHash");
    if (rows[0].contains("timestamp")) c.at = std::stoll(rows[0]["timestamp"].get<std::string>());
    return c;
  }

  /// Raw eth_call returning one 32-byte word.
  Bytes32 call_word(const Address& to, const std::string& data) {
    auto j = call("?module=proxy&action=eth_call&to=" + to.hex() + "&data=" + data + "&tag=latest" + key());
    auto s = j.value("result", std::string());
    auto b = evm::bytes_from_hex(s);
    if (!b || b->size() != 32) throw Error(ErrorCode::InconsistentResponse, "eth_call returned " + s);
    Bytes32 w;
    std::copy(b->begin(), b->end(), w.bytes().begin());
    return w;
  }

  /// Pools [begin, end) of a factory: allPairs(i), then token0/token1 and the
  /// creation record of each pair.
  std::vector<ExchangePool> fetch_pools(const Address& factory, std::uint64_t begin, std::uint64_t end,
                                        const Address& wrapped_native) {
    std::vector<ExchangePool> out;
    for (std::uint64_t i = begin; i < end; ++i) {
      ExchangePool p;
      p.address = address_word(call_word(factory, selector("allPairs(uint256)") + uint_word(i)), "allPairs");
      p.token0 = address_word(call_word(p.address, selector("token0()")), "token0");
      p.token1 = address_word(call_word(p.address, selector("token1()")), "token1");
      p.native_side = p.token0 == wrapped_native ? NativeSide::token0
                      : p.token1 == wrapped_native ? NativeSide::token1
                                                   : NativeSide::none;
      auto c = contract_creation(p.address);
      p.creator = c.creator;
      p.creation_tx = c.tx;
      p.created_at = c.at.value_or(0);
      out.push_back(p);
    }
    return out;
  }

  static std::string selector(std::string_view sig) {
    auto h = Keccak256::digest(sig);
    return hex::encode(h.bytes().data(), 4);
  }
  static std::string uint_word(std::uint64_t v) {
    std::array<std::uint8_t, 32> w{};
    for (int i = 0; i < 8; ++i) w[31 - i] = static_cast<std::uint8_t>(v >> (8 * i));
    return hex::encode(w.data(), 32, false);
  }

private:
  std::string key() const { return cfg_.api_key.empty() ? "" : "&apikey=" + cfg_.api_key; }
  std::string account_query(const char* action, const Address& a) const {
    return std::string("?module=account&action=") + action + "&address=" + a.hex() +
           "&startblock=0&endblock=99999999&sort=asc" + key();
  }
  static TxHash hash(const nlohmann::json& r, const char* k) {
    auto h = TxHash::try_parse(r.at(k).get<std::string>());
    if (!h) throw Error(ErrorCode::InconsistentResponse, std::string("bad hash in ") + k);
    return *h;
  }
  static Address address_word(const Bytes32& w, const char* what) {
    for (int i = 0; i < 12; ++i)
      if (w.bytes()[i]) throw Error(ErrorCode::InconsistentResponse, std::string(what) + " is not an address");
    Address a = Address::from_word(w);
    if (a.is_zero()) throw Error(ErrorCode::InconsistentResponse, std::string(what) + " returned the zero address");
    return a;
  }

  /// One request with rate limiting and retries. Returns the parsed body.
  nlohmann::json call(const std::string& query) {
    double backoff = cfg_.retry.initial_backoff;
    for (int attempt = 1;; ++attempt) {
      limiter_.acquire();
      ++attempts_;
      try {
        auto res = transport_->get(query);
        if (res.status == 429) throw Error(ErrorCode::RateLimited, "HTTP 429");
        if (res.status >= 500) throw Error(ErrorCode::Transport, "HTTP " + std::to_string(res.status));
        if (res.status != 200) throw Error(ErrorCode::InconsistentResponse, "HTTP " + std::to_string(res.status));
        auto j = nlohmann::json::parse(res.body, nullptr, false);
        if (j.is_discarded()) throw Error(ErrorCode::Transport, "unparseable response body");
        if (j.value("status", std::string()) == "0") {
          auto msg = j.value("message", std::string());
          auto result = j.contains("result") && j["result"].is_string() ? j["result"].get<std::string>() : "";
          if (result.find("rate limit") != std::string::npos || msg.find("rate limit") != std::string::npos)
            throw Error(ErrorCode::RateLimited, result);
          if (msg.starts_with("No ")) {
            j["result"] = nlohmann::json::array();
            return j;
          }
          throw Error(ErrorCode::InconsistentResponse, msg + ": " + result);
        }
        if (j.contains("error")) throw Error(ErrorCode::InconsistentResponse, j["error"].dump());
        return j;
      } catch (const Error& e) {
        bool retryable = e.code() == ErrorCode::Transport || e.code() == ErrorCode::RateLimited;
        if (!retryable || attempt >= cfg_.retry.max_attempts) throw;
        clock_->sleep(backoff);
        backoff *= cfg_.retry.multiplier;
      }
    }
  }

  std::vector<nlohmann::json> list(const std::string& query) {
    auto j = call(query);
    const auto& r = j.at("result");
    if (!r.is_array()) throw Error(ErrorCode::InconsistentResponse, "expected a result list");
    return std::vector<nlohmann::json>(r.begin(), r.end());
  }

  ApiClientConfig cfg_;
  Transport* transport_;
  Clock* clock_;
  RateLimiter limiter_;
  std::size_t attempts_ = 0;
  std::map<TxHash, Address> senders_;
};

/// Pools of a factory range, their first events, the native history of every
/// address that touched them and the token contracts.
inline Dataset fetch_dataset(EtherscanClient& client, const Address& factory, std::uint64_t begin, std::uint64_t end,
                             const Address& wrapped_native, std::uint64_t chain_id = 1) {
  Dataset d;
  d.manifest.chain_id = chain_id;
  d.manifest.wrapped_native = wrapped_native;
  d.pools = client.fetch_pools(factory, begin, end, wrapped_native);
  std::set<Address> actors;
  std::set<Address> tokens;
  for (auto& p : d.pools) {
    actors.insert(p.creator);
    if (!p.is_native()) continue;
    tokens.insert(p.other_token());
    auto ev = client.pool_events(p);
    p.truncated = ev.truncated;
    for (auto& e : ev.events) {
      if (e.kind != PoolEventKind::lp_transfer) actors.insert(e.actor);
      d.events.push_back(std::move(e));
    }
  }
  for (const auto& t : tokens) {
    auto c = client.contract_source(t);
    auto cr = client.contract_creation(t);
    c.creator = cr.creator;
    c.creation_tx = cr.tx;
    c.created_at = cr.at.value_or(0);
    d.contracts.push_back(std::move(c));
  }
  for (const auto& a : actors) {
    for (auto& t : client.txlist(a)) d.transfers.push_back(std::move(t));
    for (auto& t : client.txlist_internal(a)) d.transfers.push_back(std::move(t));
  }
  return d;
}

}  // namespace scamgraph
