#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "scamgraph/similarity/parser.hpp"

namespace scamgraph::testing {

/// A honeypot-style token: SafeMath and Ownable pasted verbatim, plus the
/// custom contract with a sender blacklist check.
inline const std::string kHoneypotToken = R"SOL(
// SPDX-License-Identifier: MIT
pragma solidity ^0.8.0;

library SafeMath {
    function add(uint256 a, uint256 b) internal pure returns (uint256) {
        uint256 c = a + b;
        require(c >= a, "SafeMath: addition overflow");
        return c;
    }
    function sub(uint256 a, uint256 b) internal pure returns (uint256) {
        require(b <= a, "SafeMath: subtraction overflow");
        uint256 c = a - b;
        return c;
    }
    function mul(uint256 a, uint256 b) internal pure returns (uint256) {
        if (a == 0) {
            return 0;
        }
        uint256 c = a * b;
        require(c / a == b, "SafeMath: multiplication overflow");
        return c;
    }
    function div(uint256 a, uint256 b) internal pure returns (uint256) {
        require(b > 0, "SafeMath: division by zero");
        uint256 c = a / b;
        return c;
    }
}

contract MoonToken {
    using SafeMath for uint256;

    string public name = "Moon";
    string public symbol = "MOON";
    uint8 public decimals = 18;
    uint256 public totalSupply = 1000000000 * 10 ** 18;
    address public owner;
    address[] public sender;
    mapping(address => uint256) public balanceOf;
    mapping(address => mapping(address => uint256)) public allowance;

    event Transfer(address indexed from, address indexed to, uint256 value);
    event Approval(address indexed owner, address indexed spender, uint256 value);

    modifier onlyOwner() {
        require(msg.sender == owner, "not owner");
        _;
    }

    constructor() {
        owner = msg.sender;
        balanceOf[msg.sender] = totalSupply;
        emit Transfer(address(0), msg.sender, totalSupply);
    }

    function transfer(address to, uint256 value) public returns (bool) {
        for (uint256 i = 0; i < sender.length; i++) {
            if (sender[i] == '0x0d83a1') {
                revert("blocked");
            }
        }
        balanceOf[msg.sender] = balanceOf[msg.sender].sub(value);
        balanceOf[to] = balanceOf[to].add(value);
        emit Transfer(msg.sender, to, value);
        return true;
    }

    function approve(address spender, uint256 value) public returns (bool) {
        allowance[msg.sender][spender] = value;
        emit Approval(msg.sender, spender, value);
        return true;
    }

    function transferFrom(address from, address to, uint256 value) public returns (bool) {
        require(value <= allowance[from][msg.sender], "allowance");
        allowance[from][msg.sender] -= value;
        balanceOf[from] = balanceOf[from].sub(value);
        balanceOf[to] = balanceOf[to].add(value);
        emit Transfer(from, to, value);
        return true;
    }

    function block_(address who) external onlyOwner {
        sender.push(who);
    }

    function withdraw() external onlyOwner {
        (bool ok, ) = payable(owner).call{value: address(this).balance}("");
        require(ok);
        uint256 size;
        assembly { size := extcodesize(who) }
        unchecked { size = size + 1; }
    }

    receive() external payable {}
}
)SOL";

/// Pieces used to assemble random but parseable contracts.
inline const std::vector<std::string> kFunctionBodies = {
    "x = x + a;",
    "if (a > x) { x = a; } else { x = 0; }",
    "for (uint256 i = 0; i < a; i++) { x += i; }",
    "while (x < a) { x = x * 2 + 1; }",
    "require(msg.sender == owner, \"no\"); x = a;",
    "balances[msg.sender] = balances[msg.sender] - a; emit Moved(msg.sender, a);",
    "return a > 1 ? a : x;",
    "uint256[] memory tmp = new uint256[](a); tmp[0] = x;",
    "(bool ok, ) = payable(owner).call{value: a}(\"\"); require(ok);",
    "x = uint256(keccak256(abi.encodePacked(a, block.timestamp))) % 100;",
    "delete balances[owner]; x--;",
    "do { x -= 1; } while (x > a);",
    "assembly { let y := mload(0x40) }",
    "unchecked { x = x << 2; }",
};

inline std::string random_contract(std::mt19937_64& rng, std::size_t functions = 6) {
  std::string s = "pragma solidity ^0.8.0;\ncontract C {\n  uint256 public x;\n  address owner;\n"
                  "  mapping(address => uint256) balances;\n  event Moved(address who, uint256 v);\n"
                  "  modifier onlyOwner() { require(msg.sender == owner); _; }\n";
  for (std::size_t f = 0; f < functions; ++f) {
    s += "  function f" + std::to_string(f) + "(uint256 a) public returns (uint256) {\n";
    std::size_t stmts = 1 + rng() % 3;
    for (std::size_t k = 0; k < stmts; ++k) s += "    " + kFunctionBodies[rng() % kFunctionBodies.size()] + "\n";
    s += "    return x;\n  }\n";
  }
  s += "}\n";
  return s;
}

/// Obfuscating mutations that must not change a fingerprint: member and
/// top-level reordering, consistent identifier renaming, and random comments
/// and whitespace between tokens.
///
/// Units named in `keep` (pasted library code) are left byte-for-byte intact,
/// since they only disappear from a fingerprint while they match the corpus.
class Mutator {
 public:
  explicit Mutator(std::uint64_t seed, std::set<std::string> keep = {}) : rng_(seed), keep_(std::move(keep)) {}

  std::string reorder(const std::string& src) {
    auto parsed = sim::parse_source(src);
    std::string out;
    std::size_t at = 0;
    for (const auto& u : parsed.units) {
      if (u.kind == "free" || u.members.size() < 2 || keep_.count(u.name)) continue;
      std::vector<std::string> chunks;
      for (auto [b, e] : u.members) chunks.push_back(src.substr(b, e - b));
      std::shuffle(chunks.begin(), chunks.end(), rng_);
      out += src.substr(at, u.members.front().first - at);
      for (std::size_t i = 0; i < chunks.size(); ++i) out += (i ? "\n  " : "") + chunks[i];
      at = u.members.back().second;
    }
    out += src.substr(at);
    return out;
  }

  std::string rename(const std::string& src) {
    auto toks = sim::lex(src);
    auto guarded = protected_spans(src);
    std::unordered_map<std::string, std::string> names;
    std::string out;
    std::size_t at = 0;
    bool in_pragma = false;
    for (const auto& t : toks) {
      if (t.kind == sim::Tok::end) break;
      out += src.substr(at, t.begin - at);
      at = t.end;
      if (t.kind == sim::Tok::ident && t.text == "pragma") in_pragma = true;
      if (in_pragma && t.text == ";") in_pragma = false;
      if (t.kind != sim::Tok::ident || in_pragma || reserved(t.text) || inside(guarded, t.begin)) {
        out += t.text;
        continue;
      }
      auto it = names.find(t.text);
      if (it == names.end()) it = names.emplace(t.text, fresh_name()).first;
      out += it->second;
    }
    out += src.substr(at);
    return out;
  }

  /// Re-emits the tokens separated by random whitespace and comments. Line
  /// comments are always followed by a newline.
  std::string respace(const std::string& src) {
    auto toks = sim::lex(src);
    auto guarded = protected_spans(src);
    std::string out;
    std::size_t at = 0;
    for (const auto& t : toks) {
      if (t.kind == sim::Tok::end) break;
      if (inside(guarded, t.begin)) {
        out += src.substr(at, t.end - at);
      } else {
        if (!out.empty()) out += gap();
        out += t.text;
      }
      at = t.end;
    }
    return out + "\n";
  }

  std::string mutate(const std::string& src) {
    std::string s = src;
    if (rng_() % 2) s = reorder(s);
    if (rng_() % 2) s = rename(s);
    if (rng_() % 2) s = respace(s);
    if (s == src) s = respace(rename(reorder(s)));
    return s;
  }

 private:
  std::mt19937_64 rng_;
  std::set<std::string> keep_;
  std::set<std::string> used_;

  std::vector<std::pair<std::size_t, std::size_t>> protected_spans(const std::string& src) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& u : sim::parse_source(src).units)
      if (keep_.count(u.name)) out.emplace_back(u.begin, u.end);
    return out;
  }
  // the opening keyword of a kept unit still takes a fresh gap before it
  static bool inside(const std::vector<std::pair<std::size_t, std::size_t>>& spans, std::size_t pos) {
    for (auto [b, e] : spans)
      if (pos > b && pos < e) return true;
    return false;
  }

  static bool reserved(const std::string& w) {
    static const std::set<std::string> kw = {
        "pragma",   "import",    "contract",  "library",   "interface", "abstract",  "is",        "using",
        "for",      "struct",    "enum",      "error",     "event",     "function",  "modifier",  "constructor",
        "fallback", "receive",   "returns",   "return",    "if",        "else",      "while",     "do",
        "break",    "continue",  "emit",      "revert",    "throw",     "assembly",  "unchecked", "try",
        "catch",    "new",       "delete",    "mapping",   "public",    "private",   "internal",  "external",
        "pure",     "view",      "payable",   "constant",  "immutable", "override",  "virtual",   "memory",
        "storage",  "calldata",  "indexed",   "anonymous", "true",      "false",     "type",      "_",
        "address",  "bool",      "string",    "bytes",     "byte",      "int",       "uint",      "var",
        "wei",      "gwei",      "ether",     "seconds",   "minutes",   "hours",     "days",      "weeks",
        "fixed",    "ufixed",    "hex",       "unicode",   "let"};
    if (kw.count(w)) return true;
    for (std::string p : {"uint", "int", "bytes"})
      if (w.size() > p.size() && w.starts_with(p) &&
          std::all_of(w.begin() + p.size(), w.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return true;
    return false;
  }

  std::string fresh_name() {
    static const char* letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    for (;;) {
      std::string n = "v";
      std::size_t len = 3 + rng_() % 8;
      for (std::size_t i = 0; i < len; ++i) n += letters[rng_() % 52];
      if (!reserved(n) && used_.insert(n).second) return n;
    }
  }

  std::string gap() {
    switch (rng_() % 6) {
      case 0: return "\n\t ";
      case 1: return " /* " + fresh_name() + " */ ";
      case 2: return " // " + fresh_name() + "\n";
      case 3: return "  ";
      default: return " ";
    }
  }
};

}  // namespace scamgraph::testing
