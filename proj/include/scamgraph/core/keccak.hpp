#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>

#include "scamgraph/core/address.hpp"

namespace scamgraph {

/// Keccak-256 as used by Ethereum: rate 1088 bits, original Keccak padding
/// (0x01 ... 0x80), not the FIPS-202 SHA3 domain byte 0x06.
class Keccak256 {
public:
  void update(std::span<const std::uint8_t> data) {
    for (std::uint8_t byte : data) {
      absorb_byte(byte);
    }
  }
  void update(std::string_view s) {
    update(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  }

  Bytes32 finish() {
    absorb_byte(0x01, /*pad=*/true);
    pos_ = kRate - 1;
    xor_byte(pos_, 0x80);
    permute();
    Bytes32 out;
    for (std::size_t i = 0; i < 32; ++i) {
      out.bytes()[i] = static_cast<std::uint8_t>(state_[i / 8] >> (8 * (i % 8)));
    }
    return out;
  }

  static Bytes32 digest(std::string_view s) {
    Keccak256 k;
    k.update(s);
    return k.finish();
  }

private:
  static constexpr std::size_t kRate = 136;

  void xor_byte(std::size_t i, std::uint8_t b) { state_[i / 8] ^= static_cast<std::uint64_t>(b) << (8 * (i % 8)); }

  void absorb_byte(std::uint8_t b, bool pad = false) {
    xor_byte(pos_, b);
    if (pad) return;
    if (++pos_ == kRate) {
      permute();
      pos_ = 0;
    }
  }

  static std::uint64_t rotl(std::uint64_t x, unsigned n) { return n == 0 ? x : (x << n) | (x >> (64 - n)); }

  void permute() {
    static constexpr std::uint64_t kRoundConstants[24] = {
        0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
        0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
        0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
        0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
        0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
        0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};
    static constexpr unsigned kRotations[25] = {0,  1,  62, 28, 27, 36, 44, 6,  55, 20, 3,  10, 43,
                                                25, 39, 41, 45, 15, 21, 8,  18, 2,  61, 56, 14};
    auto& a = state_;
    for (std::uint64_t rc : kRoundConstants) {
      std::uint64_t c[5], d[5], b[25];
      for (int x = 0; x < 5; ++x) c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
      for (int x = 0; x < 5; ++x) d[x] = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
      for (int i = 0; i < 25; ++i) a[i] ^= d[i % 5];
      // rho + pi: lane (x, y) moves to (y, 2x + 3y)
      for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y) b[y + 5 * ((2 * x + 3 * y) % 5)] = rotl(a[x + 5 * y], kRotations[x + 5 * y]);
      for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y) a[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
      a[0] ^= rc;
    }
  }

  std::array<std::uint64_t, 25> state_{};
  std::size_t pos_ = 0;
};

}  // namespace scamgraph
