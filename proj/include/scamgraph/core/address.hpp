#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "scamgraph/core/errors.hpp"

namespace scamgraph {

namespace hex {

inline int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

inline std::string encode(const std::uint8_t* data, std::size_t n, bool prefix = true) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = prefix ? "0x" : "";
  out.reserve(out.size() + 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(kDigits[data[i] >> 4]);
    out.push_back(kDigits[data[i] & 0xF]);
  }
  return out;
}

/// Decodes an optionally 0x-prefixed hex string; returns nullopt on bad input.
inline std::optional<std::string> decode(std::string_view text) {
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  if (text.size() % 2 != 0) return std::nullopt;
  std::string out(text.size() / 2, '\0');
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(text[2 * i]);
    int lo = nibble(text[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out[i] = static_cast<char>((hi << 4) | lo);
  }
  return out;
}

}  // namespace hex

/// Fixed-width byte string rendered as 0x-prefixed lowercase hex.
template <std::size_t N>
class FixedBytes {
public:
  static constexpr std::size_t kSize = N;

  constexpr FixedBytes() = default;
  explicit FixedBytes(const std::array<std::uint8_t, N>& b) : bytes_(b) {}

  static std::optional<FixedBytes> try_parse(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    if (text.size() != 2 * N) return std::nullopt;
    auto raw = hex::decode(text);
    if (!raw) return std::nullopt;
    FixedBytes out;
    for (std::size_t i = 0; i < N; ++i) out.bytes_[i] = static_cast<std::uint8_t>((*raw)[i]);
    return out;
  }

  std::string hex() const { return hex::encode(bytes_.data(), N); }
  const std::array<std::uint8_t, N>& bytes() const { return bytes_; }
  std::array<std::uint8_t, N>& bytes() { return bytes_; }
  bool is_zero() const {
    for (auto b : bytes_)
      if (b) return false;
    return true;
  }

  friend auto operator<=>(const FixedBytes&, const FixedBytes&) = default;

private:
  std::array<std::uint8_t, N> bytes_{};
};

using Bytes32 = FixedBytes<32>;
using TxHash = Bytes32;

enum class AccountKind { eoa, contract, unknown };

/// 20-byte account identifier. Equality, ordering and hashing use the bytes
/// only, so the canonical lowercase rendering is the identity.
class Address {
public:
  constexpr Address() = default;
  explicit Address(const FixedBytes<20>& b) : bytes_(b) {}

  /// Accepts "0x" + 40 hex digits in any case; throws MalformedAddress otherwise.
  static Address parse(std::string_view text) {
    if (!(text.starts_with("0x") || text.starts_with("0X")) || text.size() != 42)
      throw Error(ErrorCode::MalformedAddress, std::string(text));
    auto b = FixedBytes<20>::try_parse(text);
    if (!b) throw Error(ErrorCode::MalformedAddress, std::string(text));
    return Address(*b);
  }
  static std::optional<Address> try_parse(std::string_view text) {
    if (!(text.starts_with("0x") || text.starts_with("0X")) || text.size() != 42) return std::nullopt;
    auto b = FixedBytes<20>::try_parse(text);
    if (!b) return std::nullopt;
    return Address(*b);
  }
  /// Right-aligned address inside a 32-byte ABI word or topic.
  static Address from_word(const Bytes32& word) {
    FixedBytes<20> b;
    for (int i = 0; i < 20; ++i) b.bytes()[i] = word.bytes()[12 + i];
    return Address(b);
  }

  std::string hex() const { return bytes_.hex(); }
  /// Four hex digits after the prefix and the last four, as shown in short labels.
  std::string head4() const { return hex().substr(2, 4); }
  std::string tail4() const { return hex().substr(38, 4); }
  bool is_zero() const { return bytes_.is_zero(); }
  const FixedBytes<20>& bytes() const { return bytes_; }

  friend auto operator<=>(const Address&, const Address&) = default;

private:
  FixedBytes<20> bytes_;
};

}  // namespace scamgraph

template <std::size_t N>
struct std::hash<scamgraph::FixedBytes<N>> {
  std::size_t operator()(const scamgraph::FixedBytes<N>& b) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto byte : b.bytes()) h = (h ^ byte) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

template <>
struct std::hash<scamgraph::Address> {
  std::size_t operator()(const scamgraph::Address& a) const noexcept {
    return std::hash<scamgraph::FixedBytes<20>>{}(a.bytes());
  }
};
