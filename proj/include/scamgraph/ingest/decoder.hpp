#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scamgraph/core/keccak.hpp"
#include "scamgraph/ledger/types.hpp"

namespace scamgraph {

struct RawEventLog {
  Address pool;
  std::vector<Bytes32> topics;
  std::vector<std::uint8_t> data;
  std::uint64_t block = 0;
  std::uint32_t log_index = 0;
  TxHash tx_hash;
  Timestamp timestamp = 0;
  Wei gas_fee;                 // gasUsed * gasPrice of the enclosing tx, when known
  std::optional<Address> tx_from;
};

struct Unrecognized {
  Bytes32 topic0;
};

namespace evm {

inline Bytes32 topic(std::string_view signature) { return Keccak256::digest(signature); }

inline const Bytes32& mint_topic() {
  static const Bytes32 t = topic("Mint(address,uint256,uint256)");
  return t;
}
inline const Bytes32& burn_topic() {
  static const Bytes32 t = topic("Burn(address,uint256,uint256,address)");
  return t;
}
inline const Bytes32& swap_topic() {
  static const Bytes32 t = topic("Swap(address,uint256,uint256,uint256,uint256,address)");
  return t;
}
inline const Bytes32& transfer_topic() {
  static const Bytes32 t = topic("Transfer(address,address,uint256)");
  return t;
}

/// "0x..." hex to bytes; nullopt on odd length or bad digits.
inline std::optional<std::vector<std::uint8_t>> bytes_from_hex(std::string_view s) {
  if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
  if (s.size() % 2) return std::nullopt;
  auto raw = hex::decode(s);
  if (!raw) return std::nullopt;
  return std::vector<std::uint8_t>(raw->begin(), raw->end());
}

/// Unsigned 256-bit word as Wei; values that do not fit 127 bits are rejected.
inline Wei word_uint(const std::vector<std::uint8_t>& data, std::size_t word) {
  std::size_t off = word * 32;
  if (data.size() < off + 32) throw Error(ErrorCode::MalformedData, "ABI word out of range");
  for (std::size_t i = 0; i < 16; ++i)
    if (data[off + i]) throw Error(ErrorCode::MalformedData, "ABI integer exceeds 128 bits");
  unsigned __int128 v = 0;
  for (std::size_t i = 16; i < 32; ++i) v = (v << 8) | data[off + i];
  if (v >> 127) throw Error(ErrorCode::MalformedData, "ABI integer exceeds 127 bits");
  return Wei(static_cast<Wei::rep>(v));
}

/// Hex quantity ("0x1a") as an unsigned integer.
inline std::uint64_t quantity(std::string_view s) {
  if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
  if (s.empty() || s.size() > 16) throw Error(ErrorCode::MalformedData, "bad hex quantity");
  std::uint64_t v = 0;
  for (char c : s) {
    int d = hex::nibble(c);
    if (d < 0) throw Error(ErrorCode::MalformedData, "bad hex quantity");
    v = (v << 4) | static_cast<unsigned>(d);
  }
  return v;
}

}  // namespace evm

/// Decodes one pair log. Amounts on the native side become amount_native;
/// swaps are signed by direction (native in is positive).
inline std::variant<PoolEventRecord, Unrecognized> decode_event(const RawEventLog& raw, NativeSide side) {
  if (raw.topics.empty()) return Unrecognized{};
  const auto& t0 = raw.topics[0];
  auto expect = [&](std::size_t topics, std::size_t words) {
    if (raw.topics.size() != topics || raw.data.size() != words * 32)
      throw Error(ErrorCode::MalformedData, "log layout does not match its signature");
  };
  PoolEventRecord e;
  e.pool = raw.pool;
  e.block = raw.block;
  e.timestamp = raw.timestamp;
  e.tx_hash = raw.tx_hash;
  e.log_index = raw.log_index;
  e.gas_fee = raw.gas_fee;
  auto native_of = [&](Wei a0, Wei a1) { return side == NativeSide::token0 ? a0 : side == NativeSide::token1 ? a1 : Wei(0); };
  auto token_of = [&](Wei a0, Wei a1) { return side == NativeSide::token0 ? a1 : a0; };

  if (t0 == evm::mint_topic()) {
    expect(2, 2);
    Wei a0 = evm::word_uint(raw.data, 0), a1 = evm::word_uint(raw.data, 1);
    e.kind = PoolEventKind::mint;
    e.actor = raw.tx_from.value_or(Address::from_word(raw.topics[1]));
    e.amount_native = native_of(a0, a1);
    e.amount_token = token_of(a0, a1);
    return e;
  }
  if (t0 == evm::burn_topic()) {
    expect(3, 2);
    Wei a0 = evm::word_uint(raw.data, 0), a1 = evm::word_uint(raw.data, 1);
    e.kind = PoolEventKind::burn;
    e.actor = raw.tx_from.value_or(Address::from_word(raw.topics[2]));
    e.counterparty = Address::from_word(raw.topics[2]);
    e.amount_native = native_of(a0, a1);
    e.amount_token = token_of(a0, a1);
    return e;
  }
  if (t0 == evm::swap_topic()) {
    expect(3, 4);
    Wei in0 = evm::word_uint(raw.data, 0), in1 = evm::word_uint(raw.data, 1);
    Wei out0 = evm::word_uint(raw.data, 2), out1 = evm::word_uint(raw.data, 3);
    e.kind = PoolEventKind::swap;
    e.actor = raw.tx_from.value_or(Address::from_word(raw.topics[2]));
    e.counterparty = Address::from_word(raw.topics[2]);
    e.amount_native = native_of(in0 - out0, in1 - out1);
    Wei tok = token_of(in0 - out0, in1 - out1);
    e.amount_token = tok.negative() ? -tok : tok;
    return e;
  }
  if (t0 == evm::transfer_topic()) {
    expect(3, 1);
    e.kind = PoolEventKind::lp_transfer;
    e.actor = Address::from_word(raw.topics[1]);
    e.counterparty = Address::from_word(raw.topics[2]);
    e.lp_amount = evm::word_uint(raw.data, 0);
    return e;
  }
  return Unrecognized{t0};
}

/// Copies LP amounts from the Transfer logs onto the mint and burn of the same
/// transaction: minted LP goes from zero to a non-zero holder, burned LP is
/// what reached the pool.
inline void attach_lp_amounts(std::vector<PoolEventRecord>& events) {
  std::map<TxHash, Wei> minted, returned;
  for (const auto& e : events) {
    if (e.kind != PoolEventKind::lp_transfer || !e.counterparty) continue;
    if (e.actor.is_zero() && !e.counterparty->is_zero()) minted[e.tx_hash] += e.lp_amount;
    if (*e.counterparty == e.pool) returned[e.tx_hash] += e.lp_amount;
  }
  for (auto& e : events) {
    if (e.kind == PoolEventKind::mint && e.lp_amount.is_zero()) {
      if (auto it = minted.find(e.tx_hash); it != minted.end()) e.lp_amount = it->second;
    } else if (e.kind == PoolEventKind::burn && e.lp_amount.is_zero()) {
      if (auto it = returned.find(e.tx_hash); it != returned.end()) e.lp_amount = it->second;
    }
  }
}

}  // namespace scamgraph
