#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scamgraph/core/keccak.hpp"
#include "scamgraph/ledger/snapshot.hpp"

namespace scamgraph {

/// Imperative construction of small ledgers: fixtures, property tests and the
/// synthesizer all go through here. Every transaction gets a fresh hash and a
/// fixed fee unless told otherwise.
class LedgerBuilder {
public:
  explicit LedgerBuilder(std::string_view salt = "ledger", Wei fee = Wei(1'000'000'000'000'000))
      : salt_(salt), fee_(fee) {
    wrapped_native_ = address("wrapped-native");
    ds_.manifest.wrapped_native = wrapped_native_;
  }

  Wei fee() const { return fee_; }
  void set_fee(Wei f) { fee_ = f; }
  const Address& wrapped_native() const { return wrapped_native_; }
  Manifest& manifest() { return ds_.manifest; }

  /// Deterministic address derived from a name.
  Address address(std::string_view name) const {
    auto h = Keccak256::digest(salt_ + "/addr/" + std::string(name));
    FixedBytes<20> b;
    for (int i = 0; i < 20; ++i) b.bytes()[i] = h.bytes()[12 + i];
    return Address(b);
  }
  /// Like address() but with the last hex digits forced, e.g. tail "9cb0".
  Address address_with_tail(std::string_view name, std::string_view tail) const {
    std::string h = address(name).hex();
    h.replace(h.size() - tail.size(), tail.size(), tail);
    return Address::parse(h);
  }
  /// Forces both the first and the last hex digits (poisoning look-alikes).
  Address address_with_affixes(std::string_view name, std::string_view head, std::string_view tail) const {
    std::string h = address_with_tail(name, tail).hex();
    h.replace(2, head.size(), head);
    return Address::parse(h);
  }

  TxHash next_tx() {
    return Keccak256::digest(salt_ + "/tx/" + std::to_string(tx_counter_++));
  }

  NativeTransfer transfer(const Address& from, const Address& to, Wei value, Timestamp t,
                        std::optional<Wei> fee = std::nullopt, TransferKind kind = TransferKind::normal) {
    NativeTransfer x;
    x.tx_hash = next_tx();
    x.block = block_of(t);
    x.timestamp = t;
    x.sender = from;
    x.receiver = to;
    x.value = value;
    x.gas_fee = kind == TransferKind::internal ? Wei(0) : fee.value_or(fee_);
    x.kind = kind;
    x.log_index = next_log();
    ds_.transfers.push_back(x);
    return ds_.transfers.back();
  }

  Address create_token(const Address& creator, Timestamp t, std::string_view name, std::string source = {},
                       std::optional<Wei> fee = std::nullopt) {
    ContractRecord c;
    c.address = address(std::string("token/") + std::string(name));
    c.creator = creator;
    c.created_at = t;
    c.creation_tx = next_tx();
    c.creation_fee = fee.value_or(fee_);
    c.verified = !source.empty();
    c.source = std::move(source);
    ds_.contracts.push_back(c);
    return c.address;
  }

  /// A pool pairing token with the wrapped native token (native on token0 or token1 by address order).
  Address create_pool(const Address& creator, const Address& token, Timestamp t, std::optional<Wei> fee = std::nullopt) {
    return create_pair(creator, wrapped_native_, token, t, fee);
  }
  Address create_pair(const Address& creator, const Address& a, const Address& b, Timestamp t,
                      std::optional<Wei> fee = std::nullopt) {
    ExchangePool p;
    p.address = address("pool/" + a.hex() + "/" + b.hex());
    p.token0 = std::min(a, b);
    p.token1 = std::max(a, b);
    p.native_side = p.token0 == wrapped_native_ ? NativeSide::token0
                    : p.token1 == wrapped_native_ ? NativeSide::token1
                                                  : NativeSide::none;
    p.creator = creator;
    p.created_at = t;
    p.creation_tx = next_tx();
    p.creation_fee = fee.value_or(fee_);
    ds_.pools.push_back(p);
    return p.address;
  }

  /// Adds liquidity; the LP mint to the provider is recorded as a Transfer from zero.
  PoolEventRecord mint(const Address& pool, const Address& provider, Wei native, Wei lp, Timestamp t,
                       std::optional<Wei> fee = std::nullopt) {
    TxHash tx = next_tx();
    push_event(pool, PoolEventKind::lp_transfer, t, Address{}, provider, Wei(0), Wei(0), lp, tx, Wei(0));
    return push_event(pool, PoolEventKind::mint, t, provider, std::nullopt, native, Wei(0), lp, tx, fee.value_or(fee_));
  }

  /// Removes liquidity: LP sent back to the pool, then burned.
  PoolEventRecord burn(const Address& pool, const Address& remover, Wei native, Wei lp, Timestamp t,
                       std::optional<Wei> fee = std::nullopt) {
    TxHash tx = next_tx();
    push_event(pool, PoolEventKind::lp_transfer, t, remover, pool, Wei(0), Wei(0), lp, tx, Wei(0));
    return push_event(pool, PoolEventKind::burn, t, remover, std::nullopt, native, Wei(0), lp, tx, fee.value_or(fee_));
  }

  /// Signed native leg: positive pays native into the pool, negative takes it out.
  PoolEventRecord swap(const Address& pool, const Address& trader, Wei native, Timestamp t,
                       std::optional<Wei> fee = std::nullopt) {
    return push_event(pool, PoolEventKind::swap, t, trader, std::nullopt, native, Wei(1), Wei(0), next_tx(),
                      fee.value_or(fee_));
  }

  Dataset& dataset() { return ds_; }
  /// Events come out in (block, log index) order, as a node would report them.
  Dataset build() const {
    Dataset out = ds_;
    std::stable_sort(out.events.begin(), out.events.end(),
                     [](const PoolEventRecord& a, const PoolEventRecord& b) { return a.order_key() < b.order_key(); });
    return out;
  }

private:
  std::uint64_t block_of(Timestamp t) const { return static_cast<std::uint64_t>(t < 0 ? 0 : t); }
  std::uint32_t next_log() { return log_counter_++; }

  const PoolEventRecord& push_event(const Address& pool, PoolEventKind kind, Timestamp t, const Address& actor,
                                    std::optional<Address> counterparty, Wei native, Wei token, Wei lp,
                                    const TxHash& tx, Wei fee) {
    PoolEventRecord e;
    e.pool = pool;
    e.kind = kind;
    e.block = block_of(t);
    e.timestamp = t;
    e.actor = actor;
    e.counterparty = counterparty;
    e.amount_native = native;
    e.amount_token = token;
    e.lp_amount = lp;
    e.tx_hash = tx;
    e.log_index = next_log();
    e.gas_fee = fee;
    ds_.events.push_back(e);
    return ds_.events.back();
  }

  std::string salt_;
  Wei fee_;
  Address wrapped_native_;
  Dataset ds_;
  std::uint64_t tx_counter_ = 0;
  std::uint32_t log_counter_ = 0;
};

}  // namespace scamgraph
