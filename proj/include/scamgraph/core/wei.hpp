#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scamgraph {

/// Exact signed amount of native-token base units (wei).
///
/// Backed by a 128-bit integer so sums over whole datasets (hundreds of
/// thousands of ETH/BNB at 18 decimals) never overflow. No floating point is
/// involved anywhere in accounting; conversion to ETH happens only for display.
class Wei {
public:
  using rep = __int128;

  constexpr Wei() = default;
  constexpr explicit Wei(rep v) : v_(v) {}

  static constexpr Wei from_ether(std::int64_t whole) { return Wei(rep(whole) * kPerEther); }

  /// Parses a decimal string of base units ("-12", "1000000000000000000").
  static Wei parse(std::string_view text);

  /// Parses a decimal amount of whole tokens ("1.8", "0.0302") exactly.
  static Wei parse_ether(std::string_view text);

  constexpr rep raw() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }
  constexpr bool negative() const { return v_ < 0; }

  std::string str() const;
  /// Decimal ETH rendering with all 18 fractional digits trimmed of trailing zeros.
  std::string ether_str() const;
  double ether() const { return static_cast<double>(v_) / static_cast<double>(kPerEther); }

  constexpr Wei operator-() const { return Wei(-v_); }
  constexpr Wei& operator+=(Wei o) { v_ += o.v_; return *this; }
  constexpr Wei& operator-=(Wei o) { v_ -= o.v_; return *this; }
  friend constexpr Wei operator+(Wei a, Wei b) { return Wei(a.v_ + b.v_); }
  friend constexpr Wei operator-(Wei a, Wei b) { return Wei(a.v_ - b.v_); }
  friend constexpr Wei operator*(Wei a, rep k) { return Wei(a.v_ * k); }
  friend constexpr Wei operator*(rep k, Wei a) { return Wei(a.v_ * k); }
  friend constexpr auto operator<=>(Wei, Wei) = default;

  static constexpr rep kPerEther = 1'000'000'000'000'000'000;

private:
  rep v_ = 0;
};

/// Exact fraction in [0, 1] used for thresholds such as p = 0.9.
struct Fraction {
  std::int64_t num = 9;
  std::int64_t den = 10;

  static Fraction parse(std::string_view text);
  std::string str() const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  /// amount >= fraction * whole, by cross-multiplication.
  bool covered(Wei amount, Wei whole) const {
    return amount.raw() * den >= whole.raw() * num;
  }
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num * b.den == b.num * a.den;
  }
};

namespace detail {

inline std::string int128_str(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string out;
  while (u > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

}  // namespace detail

inline Wei Wei::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  bool neg = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw std::invalid_argument("bad integer: " + std::string(text));
  constexpr unsigned __int128 kMax = (static_cast<unsigned __int128>(1) << 127) - 1;
  unsigned __int128 acc = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') throw std::invalid_argument("bad integer: " + std::string(text));
    unsigned digit = static_cast<unsigned>(c - '0');
    if (acc > (kMax - digit) / 10) throw std::out_of_range("integer exceeds 127 bits: " + std::string(text));
    acc = acc * 10 + digit;
  }
  rep v = static_cast<rep>(acc);
  return Wei(neg ? -v : v);
}

inline Wei Wei::parse_ether(std::string_view text) {
  bool neg = !text.empty() && text[0] == '-';
  if (neg) text.remove_prefix(1);
  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (frac.size() > 18) throw std::invalid_argument("more than 18 decimals: " + std::string(text));
  std::string digits(whole.empty() ? "0" : whole);
  digits.append(frac);
  digits.append(18 - frac.size(), '0');
  Wei w = parse(digits);
  return neg ? -w : w;
}

inline std::string Wei::str() const { return detail::int128_str(v_); }

inline std::string Wei::ether_str() const {
  bool neg = v_ < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v_ + 1)) + 1 : static_cast<unsigned __int128>(v_);
  auto per = static_cast<unsigned __int128>(kPerEther);
  std::string whole = detail::int128_str(static_cast<__int128>(u / per));
  std::string frac = detail::int128_str(static_cast<__int128>(u % per));
  frac.insert(0, 18 - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = (neg ? "-" : "") + whole;
  if (!frac.empty()) out += "." + frac;
  return out;
}

inline Fraction Fraction::parse(std::string_view text) {
  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (frac.size() > 9) throw std::invalid_argument("fraction precision exceeds 9 digits");
  Fraction f{0, 1};
  for (char c : whole) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad fraction: " + std::string(text));
    f.num = f.num * 10 + (c - '0');
  }
  for (char c : frac) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad fraction: " + std::string(text));
    f.num = f.num * 10 + (c - '0');
    f.den *= 10;
  }
  if (f.num > f.den) throw std::invalid_argument("fraction must lie in [0,1]: " + std::string(text));
  return f;
}

inline std::string Fraction::str() const {
  // Rendered with the precision it was parsed at, e.g. "0.90".
  std::string digits = std::to_string(num);
  int decimals = 0;
  for (std::int64_t d = den; d > 1; d /= 10) ++decimals;
  if (decimals == 0) return digits;
  if (static_cast<int>(digits.size()) <= decimals) digits.insert(0, decimals - digits.size() + 1, '0');
  digits.insert(digits.size() - decimals, ".");
  return digits;
}

}  // namespace scamgraph
