#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>

#include "scamgraph/core/address.hpp"
#include "scamgraph/core/wei.hpp"

namespace scamgraph {

using Timestamp = std::int64_t;  // unix seconds

inline constexpr Timestamp kDaySeconds = 86'400;

enum class TransferKind { normal, internal };

/// A native-asset movement. Internal transfers are sent from a contract and
/// carry no fee of their own.
struct NativeTransfer {
  TxHash tx_hash;
  std::uint64_t block = 0;
  Timestamp timestamp = 0;
  Address sender;
  Address receiver;
  Wei value;
  Wei gas_fee;
  TransferKind kind = TransferKind::normal;
  std::uint32_t log_index = 0;  // disambiguates several transfers in one tx

  auto identity() const { return std::tie(tx_hash, log_index, sender, receiver, value, kind); }
  friend bool operator==(const NativeTransfer& a, const NativeTransfer& b) {
    return a.identity() == b.identity() && a.block == b.block && a.timestamp == b.timestamp &&
           a.gas_fee == b.gas_fee;
  }
};

enum class NativeSide { token0, token1, none };

struct ExchangePool {
  Address address;
  Address token0;
  Address token1;
  NativeSide native_side = NativeSide::none;
  Address creator;
  Timestamp created_at = 0;
  TxHash creation_tx;
  Wei creation_fee;
  bool truncated = false;  // event download hit the per-pool cap

  /// The non-native (scam candidate) token; undefined for native_side none.
  const Address& other_token() const { return native_side == NativeSide::token0 ? token1 : token0; }
  bool is_native() const { return native_side != NativeSide::none; }
  friend bool operator==(const ExchangePool&, const ExchangePool&) = default;
};

enum class PoolEventKind { mint, burn, swap, lp_transfer };

/// One decoded pool log. For swaps amount_native is signed: positive when the
/// actor pays native into the pool, negative when the actor receives it.
struct PoolEventRecord {
  Address pool;
  PoolEventKind kind = PoolEventKind::swap;
  std::uint64_t block = 0;
  Timestamp timestamp = 0;
  Address actor;
  std::optional<Address> counterparty;
  Wei amount_native;
  Wei amount_token;
  Wei lp_amount;
  TxHash tx_hash;
  std::uint32_t log_index = 0;
  Wei gas_fee;  // fee of the enclosing transaction, paid by its sender

  auto order_key() const { return std::make_tuple(block, log_index); }
  friend bool operator==(const PoolEventRecord&, const PoolEventRecord&) = default;
};

/// Token (or other) contract metadata including verified source if any.
struct ContractRecord {
  Address address;
  Address creator;
  Timestamp created_at = 0;
  TxHash creation_tx;
  Wei creation_fee;
  bool verified = false;
  std::string source;
  friend bool operator==(const ContractRecord&, const ContractRecord&) = default;
};

inline const char* to_string(TransferKind k) { return k == TransferKind::normal ? "normal" : "internal"; }
inline const char* to_string(NativeSide s) {
  switch (s) {
    case NativeSide::token0: return "token0";
    case NativeSide::token1: return "token1";
    case NativeSide::none: return "none";
  }
  return "none";
}
inline const char* to_string(PoolEventKind k) {
  switch (k) {
    case PoolEventKind::mint: return "mint";
    case PoolEventKind::burn: return "burn";
    case PoolEventKind::swap: return "swap";
    case PoolEventKind::lp_transfer: return "lp_transfer";
  }
  return "swap";
}

}  // namespace scamgraph
