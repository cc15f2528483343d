#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scamgraph::sim {

/// Node types that may appear in a token stream. The list and the names are
/// frozen per version; changing either invalidates every stored fingerprint.
inline constexpr int kNodeTypeVersion = 1;

enum class NodeType {
  // emitted
  ArrayTypeName,
  Assignment,
  BinaryOperation,
  BlockIdentifier,
  Break,
  Conditional,
  Continue,
  DoWhileStatement,
  ElementaryTypeName,
  ElementaryTypeNameExpression,
  EmitStatement,
  EventDefinition,
  ExpressionStatement,
  ForStatement,
  FunctionCall,
  FunctionCallOptions,
  FunctionDefinition,
  FunctionTypeName,
  IfStatement,
  IndexAccess,
  IndexRangeAccess,
  InlineAssembly,
  Literal,
  Mapping,
  MemberAccess,
  ModifierDefinition,
  ModifierInvocation,
  NewExpression,
  ParameterList,
  PlaceholderStatement,
  Return,
  RevertStatement,
  Throw,
  TryCatchClause,
  TryStatement,
  TupleExpression,
  UnaryOperation,
  UncheckedBlock,
  UserDefinedTypeName,
  VariableDeclaration,
  VariableDeclarationStatement,
  WhileStatement,
  Unsupported,
  // structural only, never emitted
  Identifier,
  Block,
  Empty,
};

inline constexpr std::array<std::string_view, 46> kNodeTypeNames = {
    "ArrayTypeName",      "Assignment",         "BinaryOperation",   "BlockIdentifier",
    "Break",              "Conditional",        "Continue",          "DoWhileStatement",
    "ElementaryTypeName", "ElementaryTypeNameExpression",            "EmitStatement",
    "EventDefinition",    "ExpressionStatement", "ForStatement",     "FunctionCall",
    "FunctionCallOptions", "FunctionDefinition", "FunctionTypeName", "IfStatement",
    "IndexAccess",        "IndexRangeAccess",   "InlineAssembly",    "Literal",
    "Mapping",            "MemberAccess",       "ModifierDefinition", "ModifierInvocation",
    "NewExpression",      "ParameterList",      "PlaceholderStatement", "Return",
    "RevertStatement",    "Throw",              "TryCatchClause",    "TryStatement",
    "TupleExpression",    "UnaryOperation",     "UncheckedBlock",    "UserDefinedTypeName",
    "VariableDeclaration", "VariableDeclarationStatement",           "WhileStatement",
    "Unsupported",        "Identifier",         "Block",             "Empty",
};

inline std::string_view name_of(NodeType t) { return kNodeTypeNames[static_cast<std::size_t>(t)]; }

inline std::optional<NodeType> node_type_from_name(std::string_view n) {
  for (std::size_t i = 0; i < kNodeTypeNames.size(); ++i)
    if (kNodeTypeNames[i] == n) return static_cast<NodeType>(i);
  return std::nullopt;
}

inline bool emitted(NodeType t) { return t < NodeType::Identifier; }

/// Children are kept in a fixed per-type order:
///   IfStatement [cond, then, else?]   WhileStatement [cond, body]
///   DoWhileStatement [cond, body]     ForStatement [init, cond, step, body] (Empty for gaps)
///   BinaryOperation/Assignment [lhs, rhs]
struct Node {
  NodeType type = NodeType::Empty;
  std::vector<Node> children;

  Node() = default;
  explicit Node(NodeType t, std::vector<Node> c = {}) : type(t), children(std::move(c)) {}
};

enum class ComponentKind { state_variable, function, event, modifier };

inline const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::state_variable: return "state_variable";
    case ComponentKind::function: return "function";
    case ComponentKind::event: return "event";
    case ComponentKind::modifier: return "modifier";
  }
  return "function";
}

struct ComponentTokenStream {
  ComponentKind kind = ComponentKind::function;
  std::vector<NodeType> tokens;

  std::vector<std::string_view> names() const {
    std::vector<std::string_view> out;
    for (auto t : tokens) out.push_back(name_of(t));
    return out;
  }
};

namespace detail {

inline void emit(const Node& n, std::vector<NodeType>& out);

inline void emit_body(const Node& n, std::vector<NodeType>& out) {
  // a control-flow body is marked by BlockIdentifier, not by its Block node
  if (n.type == NodeType::Block)
    for (const auto& c : n.children) emit(c, out);
  else
    emit(n, out);
}

inline void emit(const Node& n, std::vector<NodeType>& out) {
  switch (n.type) {
    case NodeType::BinaryOperation:
    case NodeType::Assignment:
      emit(n.children.at(0), out);
      out.push_back(n.type);
      emit(n.children.at(1), out);
      return;
    case NodeType::IfStatement:
      out.push_back(n.type);
      out.push_back(NodeType::BlockIdentifier);
      emit(n.children.at(0), out);
      emit_body(n.children.at(1), out);
      if (n.children.size() > 2 && n.children[2].type != NodeType::Empty) {
        out.push_back(NodeType::BlockIdentifier);
        emit_body(n.children[2], out);
      }
      return;
    case NodeType::WhileStatement:
    case NodeType::DoWhileStatement:
      out.push_back(n.type);
      out.push_back(NodeType::BlockIdentifier);
      emit(n.children.at(0), out);
      emit_body(n.children.at(1), out);
      return;
    case NodeType::ForStatement:
      out.push_back(n.type);
      out.push_back(NodeType::BlockIdentifier);
      for (std::size_t i = 0; i < 3; ++i) emit(n.children.at(i), out);
      emit_body(n.children.at(3), out);
      return;
    default:
      if (emitted(n.type)) out.push_back(n.type);
      for (const auto& c : n.children) emit(c, out);
  }
}

}  // namespace detail

inline std::vector<NodeType> flatten(const Node& n) {
  std::vector<NodeType> out;
  detail::emit(n, out);
  return out;
}

}  // namespace scamgraph::sim
