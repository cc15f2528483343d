#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "scamgraph/core/keccak.hpp"
#include "scamgraph/similarity/corpus.hpp"

namespace scamgraph::sim {

/// One stream per state variable, function, event and modifier, in source order.
inline std::vector<ComponentTokenStream> tokenize(std::string_view source) {
  std::vector<ComponentTokenStream> out;
  for (const auto& u : parse_source(source).units)
    for (const auto& c : u.components) out.push_back({c.kind, flatten(c.node)});
  return out;
}

inline constexpr char kTokenSeparator = '\x1f';

inline Bytes32 stream_digest(const ComponentTokenStream& s) {
  Keccak256 k;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (i) k.update(std::string_view(&kTokenSeparator, 1));
    k.update(name_of(s.tokens[i]));
  }
  return k.finish();
}

struct ContractFingerprint {
  std::set<Bytes32> hashes;
  std::size_t component_count = 0;
  int version = kNodeTypeVersion;

  friend bool operator==(const ContractFingerprint&, const ContractFingerprint&) = default;
};

inline ContractFingerprint fingerprint_streams(const std::vector<ComponentTokenStream>& streams) {
  ContractFingerprint fp;
  fp.component_count = streams.size();
  for (const auto& s : streams) fp.hashes.insert(stream_digest(s));
  return fp;
}

/// strip_common then tokenize. Throws ParseFailure for sources outside the grammar.
inline ContractFingerprint fingerprint(std::string_view source, const LibraryCorpus& corpus) {
  return fingerprint_streams(tokenize(strip_common(source, corpus)));
}

inline ContractFingerprint fingerprint(std::string_view source) {
  static const LibraryCorpus corpus = LibraryCorpus::builtin();
  return fingerprint(source, corpus);
}

/// Exact |A n B| / |A u B|.
struct SimilarityScore {
  std::uint64_t num = 1, den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const SimilarityScore& a, const SimilarityScore& b) { return a.num * b.den == b.num * a.den; }
  friend std::strong_ordering operator<=>(const SimilarityScore& a, const SimilarityScore& b) {
    return a.num * b.den <=> b.num * a.den;
  }
};

inline SimilarityScore jaccard(const ContractFingerprint& a, const ContractFingerprint& b) {
  if (a.hashes.empty() && b.hashes.empty()) return {1, 1};
  std::uint64_t common = 0;
  auto i = a.hashes.begin();
  auto j = b.hashes.begin();
  while (i != a.hashes.end() && j != b.hashes.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else ++common, ++i, ++j;
  }
  std::uint64_t uni = a.hashes.size() + b.hashes.size() - common;
  std::uint64_t g = std::gcd(common, uni);
  return {common / g, uni / g};
}

// ---------------------------------------------------------------- external ASTs

/// Reads compiler-produced compact AST JSON ("nodeType" objects). Children are
/// taken from the fields below in this order; node types outside the frozen
/// enumeration become Unsupported, identifiers and paths are dropped.
namespace ast_json {

using nlohmann::json;

inline const std::map<std::string, std::vector<std::string>>& child_fields() {
  static const std::map<std::string, std::vector<std::string>> m = {
      {"ArrayTypeName", {"baseType", "length"}},
      {"Assignment", {"leftHandSide", "rightHandSide"}},
      {"BinaryOperation", {"leftExpression", "rightExpression"}},
      {"Block", {"statements"}},
      {"UncheckedBlock", {"statements"}},
      {"Conditional", {"condition", "trueExpression", "falseExpression"}},
      {"DoWhileStatement", {"condition", "body"}},
      {"ElementaryTypeNameExpression", {"typeName"}},
      {"EmitStatement", {"eventCall"}},
      {"EventDefinition", {"parameters"}},
      {"ExpressionStatement", {"expression"}},
      {"ForStatement", {"initializationExpression", "condition", "loopExpression", "body"}},
      {"FunctionCall", {"expression", "arguments"}},
      {"FunctionCallOptions", {"expression", "options"}},
      {"FunctionDefinition", {"parameters", "returnParameters", "modifiers", "body"}},
      {"FunctionTypeName", {"parameterTypes", "returnParameterTypes"}},
      {"IfStatement", {"condition", "trueBody", "falseBody"}},
      {"IndexAccess", {"baseExpression", "indexExpression"}},
      {"IndexRangeAccess", {"baseExpression", "startExpression", "endExpression"}},
      {"Mapping", {"keyType", "valueType"}},
      {"MemberAccess", {"expression"}},
      {"ModifierDefinition", {"parameters", "body"}},
      {"ModifierInvocation", {"arguments"}},
      {"NewExpression", {"typeName"}},
      {"ParameterList", {"parameters"}},
      {"Return", {"expression"}},
      {"RevertStatement", {"errorCall"}},
      {"TryCatchClause", {"parameters", "block"}},
      {"TryStatement", {"externalCall", "clauses"}},
      {"TupleExpression", {"components"}},
      {"UnaryOperation", {"subExpression"}},
      {"VariableDeclaration", {"typeName", "value"}},
      {"VariableDeclarationStatement", {"declarations", "initialValue"}},
      {"WhileStatement", {"condition", "body"}},
  };
  return m;
}

inline Node convert(const json& j) {
  if (j.is_null()) return Node(NodeType::Empty);
  if (!j.is_object() || !j.contains("nodeType")) throw Error(ErrorCode::ParseFailure, "AST node without nodeType");
  std::string type = j.at("nodeType").get<std::string>();
  if (type == "Identifier" || type == "IdentifierPath") return Node(NodeType::Identifier);
  if (type == "InlineAssembly" || type == "Literal" || type == "ElementaryTypeName" || type == "UserDefinedTypeName" ||
      type == "PlaceholderStatement" || type == "Break" || type == "Continue" || type == "Throw")
    return Node(*node_type_from_name(type));
  auto t = node_type_from_name(type);
  Node n(t ? *t : NodeType::Unsupported);
  auto fields = child_fields().find(type);
  if (fields == child_fields().end()) return n;
  for (const auto& f : fields->second) {
    auto it = j.find(f);
    bool control = n.type == NodeType::IfStatement || n.type == NodeType::ForStatement ||
                   n.type == NodeType::WhileStatement || n.type == NodeType::DoWhileStatement;
    if (it == j.end() || it->is_null()) {
      // control-flow nodes keep positional slots
      if (control) n.children.push_back(Node(NodeType::Empty));
      continue;
    }
    if (it->is_array()) {
      for (const auto& c : *it)
        if (!c.is_null()) n.children.push_back(convert(c));
    } else {
      n.children.push_back(convert(*it));
    }
  }
  return n;
}

/// Components of every contract in a SourceUnit document, skipping contracts
/// whose name appears in the corpus (the JSON carries no text to compare).
inline std::vector<ComponentTokenStream> tokenize(const json& source_unit, const LibraryCorpus* corpus = nullptr) {
  std::vector<ComponentTokenStream> out;
  auto visit_member = [&](const json& m) {
    std::string t = m.value("nodeType", "");
    if (t == "VariableDeclaration") out.push_back({ComponentKind::state_variable, flatten(convert(m))});
    else if (t == "FunctionDefinition") out.push_back({ComponentKind::function, flatten(convert(m))});
    else if (t == "EventDefinition") out.push_back({ComponentKind::event, flatten(convert(m))});
    else if (t == "ModifierDefinition") out.push_back({ComponentKind::modifier, flatten(convert(m))});
  };
  if (source_unit.value("nodeType", "") != "SourceUnit") throw Error(ErrorCode::ParseFailure, "expected a SourceUnit");
  for (const auto& n : source_unit.value("nodes", json::array())) {
    std::string t = n.value("nodeType", "");
    if (t == "ContractDefinition") {
      if (corpus && corpus->has_name(n.value("name", ""))) continue;
      for (const auto& m : n.value("nodes", json::array())) visit_member(m);
    } else {
      visit_member(n);
    }
  }
  return out;
}

}  // namespace ast_json

/// Source of token streams for a contract. The default parses source text;
/// an alternative can hand over compiler ASTs instead.
class AstProvider {
 public:
  virtual ~AstProvider() = default;
  virtual std::vector<ComponentTokenStream> components(const std::string& source) const = 0;
};

class BuiltinParserProvider : public AstProvider {
 public:
  explicit BuiltinParserProvider(LibraryCorpus corpus = LibraryCorpus::builtin()) : corpus_(std::move(corpus)) {}
  std::vector<ComponentTokenStream> components(const std::string& source) const override {
    return tokenize(strip_common(source, corpus_));
  }

 private:
  LibraryCorpus corpus_;
};

/// Treats the "source" as a compact AST JSON document.
class JsonAstProvider : public AstProvider {
 public:
  explicit JsonAstProvider(LibraryCorpus corpus = LibraryCorpus::builtin()) : corpus_(std::move(corpus)) {}
  std::vector<ComponentTokenStream> components(const std::string& source) const override {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(source);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::ParseFailure, std::string("AST JSON: ") + e.what());
    }
    if (doc.contains("ast")) doc = doc["ast"];
    return ast_json::tokenize(doc, &corpus_);
  }

 private:
  LibraryCorpus corpus_;
};

// ---------------------------------------------------------------- cache

/// Fingerprints keyed by (contract address, node-type version). Entries from
/// other versions are ignored on load. A skipped entry remembers the parse
/// failure so a bad source is not re-parsed.
class FingerprintCache {
 public:
  struct Entry {
    std::optional<ContractFingerprint> fingerprint;
    std::string error;
  };

  const Entry* find(const Address& a) const {
    auto it = entries_.find(a);
    return it == entries_.end() ? nullptr : &it->second;
  }
  void put(const Address& a, Entry e) { entries_[a] = std::move(e); }
  std::size_t size() const { return entries_.size(); }

  void load(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || j.value("version", -1) != kNodeTypeVersion) continue;
      Entry e;
      if (j.value("status", "") == "ok") {
        ContractFingerprint fp;
        fp.component_count = j.value("component_count", std::size_t{0});
        for (const auto& h : j.value("hashes", nlohmann::json::array())) {
          auto b = Bytes32::try_parse(h.get<std::string>());
          if (!b) continue;
          fp.hashes.insert(*b);
        }
        e.fingerprint = std::move(fp);
      } else {
        e.error = j.value("error", "");
      }
      entries_[Address::parse(j.at("address").get<std::string>())] = std::move(e);
    }
  }

  void save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path.string());
    for (const auto& [a, e] : entries_) {
      nlohmann::json j = {{"address", a.hex()}, {"version", kNodeTypeVersion}};
      if (e.fingerprint) {
        j["status"] = "ok";
        j["component_count"] = e.fingerprint->component_count;
        auto hs = nlohmann::json::array();
        for (const auto& h : e.fingerprint->hashes) hs.push_back(h.hex());
        j["hashes"] = hs;
      } else {
        j["status"] = "skipped";
        j["error"] = e.error;
      }
      out << j.dump() << '\n';
    }
  }

 private:
  std::map<Address, Entry> entries_;
};

}  // namespace scamgraph::sim
