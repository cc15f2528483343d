#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "scamgraph/ledger/snapshot.hpp"

namespace scamgraph {

inline constexpr int kSchemaVersion = 1;

enum class LoadMode { strict, lenient };

struct LoadReport {
  std::size_t skipped = 0;
  std::vector<std::string> problems;  // "file:line: message"
};

namespace io {

using nlohmann::json;

inline std::string u64(std::uint64_t v) { return std::to_string(v); }
inline std::string i64(std::int64_t v) { return std::to_string(v); }

inline const json& field(const json& j, const char* k) {
  auto it = j.find(k);
  if (it == j.end()) throw Error(ErrorCode::MalformedData, std::string("missing field ") + k);
  return *it;
}
inline std::string str(const json& j, const char* k) {
  const auto& v = field(j, k);
  if (!v.is_string()) throw Error(ErrorCode::MalformedData, std::string("field ") + k + " must be a string");
  return v.get<std::string>();
}
inline std::uint64_t as_u64(const json& j, const char* k) {
  auto s = str(j, k);
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (...) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-') throw Error(ErrorCode::MalformedData, std::string("bad integer ") + k);
  return v;
}
inline std::int64_t as_i64(const json& j, const char* k) {
  auto s = str(j, k);
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (...) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(ErrorCode::MalformedData, std::string("bad integer ") + k);
  return v;
}
inline Wei as_wei(const json& j, const char* k) {
  try {
    return Wei::parse(str(j, k));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::MalformedData, std::string("bad amount ") + k + ": " + e.what());
  }
}
inline Address as_addr(const json& j, const char* k) { return Address::parse(str(j, k)); }
inline TxHash as_hash(const json& j, const char* k) {
  auto h = TxHash::try_parse(str(j, k));
  if (!h) throw Error(ErrorCode::MalformedData, std::string("bad hash ") + k);
  return *h;
}
inline bool as_bool(const json& j, const char* k) {
  const auto& v = field(j, k);
  if (!v.is_boolean()) throw Error(ErrorCode::MalformedData, std::string("field ") + k + " must be a boolean");
  return v.get<bool>();
}

inline json to_json(const NativeTransfer& t) {
  return {{"tx_hash", t.tx_hash.hex()}, {"block", u64(t.block)},       {"timestamp", i64(t.timestamp)},
          {"sender", t.sender.hex()},   {"receiver", t.receiver.hex()}, {"value", t.value.str()},
          {"gas_fee", t.gas_fee.str()}, {"kind", to_string(t.kind)},    {"log_index", u64(t.log_index)}};
}
inline NativeTransfer transfer_from(const json& j) {
  NativeTransfer t;
  t.tx_hash = as_hash(j, "tx_hash");
  t.block = as_u64(j, "block");
  t.timestamp = as_i64(j, "timestamp");
  t.sender = as_addr(j, "sender");
  t.receiver = as_addr(j, "receiver");
  t.value = as_wei(j, "value");
  t.gas_fee = as_wei(j, "gas_fee");
  auto kind = str(j, "kind");
  if (kind == "normal") t.kind = TransferKind::normal;
  else if (kind == "internal") t.kind = TransferKind::internal;
  else throw Error(ErrorCode::MalformedData, "bad transfer kind " + kind);
  t.log_index = static_cast<std::uint32_t>(as_u64(j, "log_index"));
  if (t.value.negative() || t.gas_fee.negative()) throw Error(ErrorCode::MalformedData, "negative transfer amount");
  return t;
}

inline json to_json(const PoolEventRecord& e) {
  return {{"pool", e.pool.hex()},
          {"kind", to_string(e.kind)},
          {"block", u64(e.block)},
          {"timestamp", i64(e.timestamp)},
          {"actor", e.actor.hex()},
          {"counterparty", e.counterparty ? json(e.counterparty->hex()) : json(nullptr)},
          {"amount_native", e.amount_native.str()},
          {"amount_token", e.amount_token.str()},
          {"lp_amount", e.lp_amount.str()},
          {"tx_hash", e.tx_hash.hex()},
          {"log_index", u64(e.log_index)},
          {"gas_fee", e.gas_fee.str()}};
}
inline PoolEventRecord event_from(const json& j) {
  PoolEventRecord e;
  e.pool = as_addr(j, "pool");
  auto kind = str(j, "kind");
  if (kind == "mint") e.kind = PoolEventKind::mint;
  else if (kind == "burn") e.kind = PoolEventKind::burn;
  else if (kind == "swap") e.kind = PoolEventKind::swap;
  else if (kind == "lp_transfer") e.kind = PoolEventKind::lp_transfer;
  else throw Error(ErrorCode::MalformedData, "bad event kind " + kind);
  e.block = as_u64(j, "block");
  e.timestamp = as_i64(j, "timestamp");
  e.actor = as_addr(j, "actor");
  if (const auto& c = field(j, "counterparty"); !c.is_null()) e.counterparty = as_addr(j, "counterparty");
  e.amount_native = as_wei(j, "amount_native");
  e.amount_token = as_wei(j, "amount_token");
  e.lp_amount = as_wei(j, "lp_amount");
  e.tx_hash = as_hash(j, "tx_hash");
  e.log_index = static_cast<std::uint32_t>(as_u64(j, "log_index"));
  e.gas_fee = as_wei(j, "gas_fee");
  return e;
}

inline json to_json(const ExchangePool& p) {
  return {{"address", p.address.hex()},        {"token0", p.token0.hex()},
          {"token1", p.token1.hex()},          {"native_side", to_string(p.native_side)},
          {"creator", p.creator.hex()},        {"created_at", i64(p.created_at)},
          {"creation_tx", p.creation_tx.hex()}, {"creation_fee", p.creation_fee.str()},
          {"truncated", p.truncated}};
}
inline ExchangePool pool_from(const json& j) {
  ExchangePool p;
  p.address = as_addr(j, "address");
  p.token0 = as_addr(j, "token0");
  p.token1 = as_addr(j, "token1");
  auto side = str(j, "native_side");
  if (side == "token0") p.native_side = NativeSide::token0;
  else if (side == "token1") p.native_side = NativeSide::token1;
  else if (side == "none") p.native_side = NativeSide::none;
  else throw Error(ErrorCode::MalformedData, "bad native_side " + side);
  p.creator = as_addr(j, "creator");
  p.created_at = as_i64(j, "created_at");
  p.creation_tx = as_hash(j, "creation_tx");
  p.creation_fee = as_wei(j, "creation_fee");
  p.truncated = as_bool(j, "truncated");
  return p;
}

inline json to_json(const ContractRecord& c) {
  return {{"address", c.address.hex()},   {"creator", c.creator.hex()},         {"created_at", i64(c.created_at)},
          {"creation_tx", c.creation_tx.hex()}, {"creation_fee", c.creation_fee.str()}, {"verified", c.verified},
          {"source", c.source}};
}
inline ContractRecord contract_from(const json& j) {
  ContractRecord c;
  c.address = as_addr(j, "address");
  c.creator = as_addr(j, "creator");
  c.created_at = as_i64(j, "created_at");
  c.creation_tx = as_hash(j, "creation_tx");
  c.creation_fee = as_wei(j, "creation_fee");
  c.verified = as_bool(j, "verified");
  c.source = str(j, "source");
  return c;
}

inline json to_json(const Manifest& m) {
  json j = {{"schema_version", m.schema_version},
            {"chain_id", m.chain_id},
            {"wrapped_native_address", m.wrapped_native.hex()}};
  if (m.collection_start) j["collection_start"] = i64(*m.collection_start);
  if (m.collection_end) j["collection_end"] = i64(*m.collection_end);
  return j;
}
inline Manifest manifest_from(const json& j) {
  Manifest m;
  const auto& v = field(j, "schema_version");
  if (!v.is_number_integer()) throw Error(ErrorCode::MalformedData, "schema_version must be an integer");
  m.schema_version = v.get<int>();
  if (m.schema_version != kSchemaVersion)
    throw Error(ErrorCode::SchemaVersionMismatch,
                "dataset schema " + std::to_string(m.schema_version) + ", expected " + std::to_string(kSchemaVersion));
  m.chain_id = field(j, "chain_id").get<std::uint64_t>();
  m.wrapped_native = as_addr(j, "wrapped_native_address");
  if (j.contains("collection_start")) m.collection_start = as_i64(j, "collection_start");
  if (j.contains("collection_end")) m.collection_end = as_i64(j, "collection_end");
  return m;
}

template <class T>
void write_lines(const std::filesystem::path& path, const std::vector<T>& items) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path.string());
  for (const auto& x : items) out << to_json(x).dump() << '\n';
}

template <class T, class Parse>
std::vector<T> read_lines(const std::filesystem::path& path, Parse parse, LoadMode mode, LoadReport& report) {
  std::vector<T> out;
  std::ifstream in(path, std::ios::binary);
  if (!in) return out;  // an absent entity file is an empty one
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(parse(json::parse(line)));
    } catch (const std::exception& e) {
      std::string where = path.filename().string() + ":" + std::to_string(lineno);
      if (mode == LoadMode::strict) throw Error(ErrorCode::CorruptLine, where + ": " + e.what());
      ++report.skipped;
      report.problems.push_back(where + ": " + e.what());
    }
  }
  return out;
}

}  // namespace io

/// Writes manifest.json plus one JSONL file per entity. Output is canonical:
/// keys sorted, amounts as decimal strings, records in dataset order.
inline void save_dataset(const Dataset& d, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + (dir / "manifest.json").string());
    out << io::to_json(d.manifest).dump(2) << '\n';
  }
  io::write_lines(dir / "transfers.jsonl", d.transfers);
  io::write_lines(dir / "events.jsonl", d.events);
  io::write_lines(dir / "pools.jsonl", d.pools);
  io::write_lines(dir / "contracts.jsonl", d.contracts);
}

inline Dataset load_dataset(const std::filesystem::path& dir, LoadMode mode = LoadMode::strict,
                            LoadReport* report = nullptr) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  Dataset d;
  std::ifstream in(dir / "manifest.json");
  if (!in) throw Error(ErrorCode::InvalidConfig, "no manifest.json in " + dir.string());
  try {
    d.manifest = io::manifest_from(io::json::parse(in));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::MalformedData, std::string("manifest.json: ") + e.what());
  }
  d.transfers = io::read_lines<NativeTransfer>(dir / "transfers.jsonl", io::transfer_from, mode, rep);
  d.events = io::read_lines<PoolEventRecord>(dir / "events.jsonl", io::event_from, mode, rep);
  d.pools = io::read_lines<ExchangePool>(dir / "pools.jsonl", io::pool_from, mode, rep);
  d.contracts = io::read_lines<ContractRecord>(dir / "contracts.jsonl", io::contract_from, mode, rep);
  return d;
}

}  // namespace scamgraph
