#pragma once

#include <cctype>
#include <cstring>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "scamgraph/core/errors.hpp"
#include "scamgraph/similarity/ast.hpp"

// Recursive-descent parser for the contract-language subset used by ERC-20
// style tokens: pragma/import, contract/library/interface declarations,
// structs, enums, errors, using-for, state variables, functions, modifiers,
// events, the usual statements and the full expression grammar. Inline
// assembly is skipped as one opaque node.

namespace scamgraph::sim {

enum class Tok { ident, number, string, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t begin = 0, end = 0;  // byte span in the source
};

inline Error parse_error(std::string_view src, std::size_t at, const std::string& msg) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < at && i < src.size(); ++i) {
    if (src[i] == '\n') ++line, col = 1;
    else ++col;
  }
  return Error(ErrorCode::ParseFailure, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

inline std::vector<Token> lex(std::string_view s) {
  static const char* const kPuncts[] = {">>>=", "<<=", ">>=", ">>>", "**", "==", "!=", "<=", ">=", "&&", "||",
                                        "++",   "--",  "+=",  "-=",  "*=", "/=", "%=", "|=", "&=", "^=", "<<",
                                        ">>",   "=>",  "->"};
  std::vector<Token> out;
  std::size_t i = 0, n = s.size();
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; };
  while (i < n) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    if (c == '/' && i + 1 < n && s[i + 1] == '/') {
      while (i < n && s[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && s[i + 1] == '*') {
      auto e = s.find("*/", i + 2);
      if (e == std::string_view::npos) throw parse_error(s, i, "unterminated comment");
      i = e + 2;
      continue;
    }
    Token t;
    t.begin = i;
    if (c == '"' || c == '\'') {
      std::size_t j = i + 1;
      while (j < n && s[j] != c) {
        if (s[j] == '\\') ++j;
        if (j < n && s[j] == '\n') throw parse_error(s, j, "newline in string literal");
        ++j;
      }
      if (j >= n) throw parse_error(s, i, "unterminated string literal");
      t.kind = Tok::string;
      i = j + 1;
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i;
      if (c == '0' && j + 1 < n && (s[j + 1] == 'x' || s[j + 1] == 'X')) {
        j += 2;
        while (j < n && (std::isxdigit(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      } else {
        while (j < n && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '.')) ++j;
        if (j < n && (s[j] == 'e' || s[j] == 'E')) {
          ++j;
          if (j < n && s[j] == '-') ++j;
          while (j < n && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        }
      }
      if (j < n && ident_char(s[j])) throw parse_error(s, j, "malformed number");
      t.kind = Tok::number;
      i = j;
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < n && ident_char(s[j])) ++j;
      t.kind = Tok::ident;
      i = j;
      // hex"..." and unicode"..." are single literals
      std::string_view word = s.substr(t.begin, j - t.begin);
      if ((word == "hex" || word == "unicode") && j < n && (s[j] == '"' || s[j] == '\'')) {
        char q = s[j];
        auto e = s.find(q, j + 1);
        if (e == std::string_view::npos) throw parse_error(s, j, "unterminated string literal");
        t.kind = Tok::string;
        i = e + 1;
      }
    } else {
      t.kind = Tok::punct;
      std::size_t len = 1;
      for (const char* p : kPuncts) {
        std::string_view pv(p);
        if (s.substr(i, pv.size()) == pv) { len = pv.size(); break; }
      }
      if (len == 1 && !std::strchr("{}()[];,.?:=<>+-*/%!~&|^@", c)) throw parse_error(s, i, std::string("unexpected character '") + c + "'");
      i += len;
    }
    t.end = i;
    t.text = std::string(s.substr(t.begin, t.end - t.begin));
    out.push_back(std::move(t));
  }
  Token e;
  e.begin = e.end = n;
  out.push_back(e);
  return out;
}

struct ParsedComponent {
  ComponentKind kind = ComponentKind::function;
  Node node;
  std::size_t begin = 0, end = 0;
};

/// contract, abstract contract, library, interface, or "free" for file-level
/// functions and constants.
struct ParsedUnit {
  std::string kind;
  std::string name;
  std::size_t begin = 0, end = 0;
  std::vector<ParsedComponent> components;
  std::vector<std::pair<std::size_t, std::size_t>> members;  // every member span, components or not
};

struct ParsedSource {
  std::vector<ParsedUnit> units;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(lex(src)) {}

  ParsedSource parse_source() {
    ParsedSource out;
    while (!at_end()) {
      if (is("pragma") || is("import")) {
        skip_past(";");
      } else if (is("contract") || is("library") || is("interface") || (is("abstract") && peek_is(1, "contract"))) {
        out.units.push_back(unit());
      } else if (is("struct") || is("enum")) {
        advance();
        expect_ident();
        skip_balanced_braces();
      } else if (is("error") || is("using") || is("type")) {
        skip_past(";");
      } else if (is("event")) {
        // file-level events are rare; fold them into a free unit
        free_unit(out).components.push_back(event_def());
      } else if (is("function")) {
        free_unit(out).components.push_back(function_def());
      } else if (is_type_start()) {
        auto& u = free_unit(out);
        u.components.push_back(state_variable());
      } else {
        fail("expected a top-level declaration");
      }
    }
    return out;
  }

 private:
  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return cur().kind == Tok::end; }
  bool is(std::string_view t) const { return cur().kind != Tok::string && cur().text == t; }
  bool peek_is(std::size_t k, std::string_view t) const { return peek(k).kind != Tok::string && peek(k).text == t; }
  Token advance() { return at_end() ? cur() : toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(src_, cur().begin, msg + (at_end() ? " at end of input" : " near '" + cur().text + "'"));
  }
  void expect(std::string_view t) {
    if (!is(t)) fail("expected '" + std::string(t) + "'");
    advance();
  }
  bool accept(std::string_view t) {
    if (!is(t)) return false;
    advance();
    return true;
  }
  bool is_ident() const { return cur().kind == Tok::ident; }
  std::string expect_ident() {
    if (!is_ident()) fail("expected identifier");
    return advance().text;
  }
  std::size_t prev_end() const { return pos_ ? toks_[pos_ - 1].end : 0; }

  void skip_past(std::string_view t) {
    while (!at_end() && !is(t)) advance();
    expect(t);
  }
  void skip_balanced_braces() {
    while (!at_end() && !is("{")) advance();
    expect("{");
    int depth = 1;
    while (!at_end() && depth) {
      if (is("{")) ++depth;
      else if (is("}")) --depth;
      advance();
    }
    if (depth) fail("unbalanced braces");
  }
  void skip_balanced_parens() {
    expect("(");
    int depth = 1;
    while (!at_end() && depth) {
      if (is("(")) ++depth;
      else if (is(")")) --depth;
      advance();
    }
    if (depth) fail("unbalanced parentheses");
  }

  static ParsedUnit& free_unit(ParsedSource& s) {
    if (s.units.empty() || s.units.back().kind != "free") s.units.push_back(ParsedUnit{"free", "", 0, 0, {}, {}});
    return s.units.back();
  }

  ParsedUnit unit() {
    ParsedUnit u;
    u.begin = cur().begin;
    if (accept("abstract")) {
      u.kind = "abstract contract";
      advance();
    } else {
      u.kind = advance().text;
    }
    u.name = expect_ident();
    if (accept("is")) {
      do {
        expect_ident();
        while (accept(".")) expect_ident();
        if (is("(")) skip_balanced_parens();
      } while (accept(","));
    }
    expect("{");
    while (!is("}")) {
      if (at_end()) fail("unterminated contract body");
      std::size_t mb = cur().begin;
      if (is("function") || is("constructor") || is("fallback") || is("receive")) {
        u.components.push_back(function_def());
      } else if (is("modifier")) {
        u.components.push_back(modifier_def());
      } else if (is("event")) {
        u.components.push_back(event_def());
      } else if (is("struct") || is("enum")) {
        advance();
        expect_ident();
        skip_balanced_braces();
      } else if (is("using") || is("error")) {
        skip_past(";");
      } else if (is_type_start()) {
        u.components.push_back(state_variable());
      } else {
        fail("expected a contract member");
      }
      u.members.emplace_back(mb, prev_end());
    }
    expect("}");
    u.end = prev_end();
    return u;
  }

  // ---------------------------------------------------------------- types

  static bool elementary(std::string_view w) {
    static const std::unordered_set<std::string_view> fixed = {"address", "bool", "string", "bytes", "byte",
                                                              "int",     "uint", "fixed",  "ufixed", "var", "payable"};
    if (fixed.count(w)) return true;
    auto sized = [&](std::string_view prefix) {
      if (!w.starts_with(prefix) || w.size() == prefix.size()) return false;
      for (char c : w.substr(prefix.size()))
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != 'x') return false;
      return true;
    };
    return sized("uint") || sized("int") || sized("bytes") || sized("fixed") || sized("ufixed");
  }

  static bool keyword(std::string_view w) {
    static const std::unordered_set<std::string_view> kw = {
        "if",     "else",     "for",      "while",    "do",     "return",   "break",   "continue", "emit",
        "revert", "throw",    "assembly", "unchecked", "try",   "catch",    "new",     "delete",   "function",
        "modifier", "event",  "contract", "library",  "interface", "struct", "enum",   "mapping",  "public",
        "private", "internal", "external", "pure",     "view",     "payable", "constant", "immutable", "override",
        "virtual", "memory",   "storage",  "calldata", "indexed",  "anonymous", "returns", "using",   "is",
        "true",    "false",    "error",    "type"};
    return kw.count(w) > 0;
  }

  bool is_type_start() const {
    if (cur().kind != Tok::ident) return false;
    if (is("mapping") || is("function")) return true;
    if (elementary(cur().text)) return true;
    return !keyword(cur().text);
  }

  Node type_name() {
    Node t;
    if (accept("mapping")) {
      expect("(");
      Node k = type_name();
      if (is_ident() && !is("=>")) advance();  // named mapping key
      expect("=>");
      Node v = type_name();
      if (is_ident()) advance();
      expect(")");
      t = Node(NodeType::Mapping, {std::move(k), std::move(v)});
    } else if (is("function")) {
      advance();
      Node params = parameter_list();
      Node ret(NodeType::ParameterList);
      while (is_ident() && (is("external") || is("internal") || is("pure") || is("view") || is("payable") ||
                            is("public") || is("private")))
        advance();
      if (accept("returns")) ret = parameter_list();
      t = Node(NodeType::FunctionTypeName, {std::move(params), std::move(ret)});
    } else if (is_ident() && elementary(cur().text)) {
      std::string w = advance().text;
      if (w == "address") accept("payable");
      t = Node(NodeType::ElementaryTypeName);
    } else if (is_ident() && !keyword(cur().text)) {
      advance();
      while (accept(".")) expect_ident();
      t = Node(NodeType::UserDefinedTypeName);
    } else {
      fail("expected a type name");
    }
    while (is("[")) {
      advance();
      Node arr(NodeType::ArrayTypeName, {std::move(t)});
      if (!is("]")) arr.children.push_back(expression());
      expect("]");
      t = std::move(arr);
    }
    return t;
  }

  bool data_location() const { return is("memory") || is("storage") || is("calldata"); }

  Node parameter_list() {
    Node list(NodeType::ParameterList);
    expect("(");
    if (!is(")")) {
      do {
        Node decl(NodeType::VariableDeclaration, {type_name()});
        while (is_ident() && (data_location() || is("indexed") || is("payable"))) advance();
        if (is_ident() && !keyword(cur().text)) advance();
        list.children.push_back(std::move(decl));
      } while (accept(","));
    }
    expect(")");
    return list;
  }

  // ---------------------------------------------------------------- members

  ParsedComponent state_variable() {
    ParsedComponent c;
    c.kind = ComponentKind::state_variable;
    c.begin = cur().begin;
    Node decl(NodeType::VariableDeclaration, {type_name()});
    while (is_ident() && (is("public") || is("private") || is("internal") || is("constant") || is("immutable") ||
                          is("override") || is("transient"))) {
      if (advance().text == "override" && is("(")) skip_balanced_parens();
    }
    expect_ident();
    if (accept("=")) decl.children.push_back(expression());
    expect(";");
    c.node = std::move(decl);
    c.end = prev_end();
    return c;
  }

  ParsedComponent event_def() {
    ParsedComponent c;
    c.kind = ComponentKind::event;
    c.begin = cur().begin;
    expect("event");
    expect_ident();
    Node params = parameter_list();
    accept("anonymous");
    expect(";");
    c.node = Node(NodeType::EventDefinition, {std::move(params)});
    c.end = prev_end();
    return c;
  }

  ParsedComponent modifier_def() {
    ParsedComponent c;
    c.kind = ComponentKind::modifier;
    c.begin = cur().begin;
    expect("modifier");
    expect_ident();
    Node params = is("(") ? parameter_list() : Node(NodeType::ParameterList);
    while (is("virtual") || is("override")) {
      if (advance().text == "override" && is("(")) skip_balanced_parens();
    }
    Node n(NodeType::ModifierDefinition, {std::move(params)});
    if (is("{")) n.children.push_back(block());
    else expect(";");
    c.node = std::move(n);
    c.end = prev_end();
    return c;
  }

  ParsedComponent function_def() {
    ParsedComponent c;
    c.kind = ComponentKind::function;
    c.begin = cur().begin;
    std::string head = advance().text;
    if (head == "function" && is_ident() && !is("(")) advance();  // name; fallback/receive may be written as names too
    Node params = parameter_list();
    Node ret(NodeType::ParameterList);
    std::vector<Node> modifiers;
    for (;;) {
      if (is("public") || is("private") || is("internal") || is("external") || is("pure") || is("view") ||
          is("payable") || is("constant") || is("virtual")) {
        advance();
      } else if (is("override")) {
        advance();
        if (is("(")) skip_balanced_parens();
      } else if (is("returns")) {
        advance();
        ret = parameter_list();
      } else if (is_ident() && !keyword(cur().text)) {
        advance();
        while (accept(".")) expect_ident();
        Node inv(NodeType::ModifierInvocation);
        if (is("(")) inv.children = arguments();
        modifiers.push_back(std::move(inv));
      } else {
        break;
      }
    }
    Node fn(NodeType::FunctionDefinition, {std::move(params), std::move(ret)});
    for (auto& m : modifiers) fn.children.push_back(std::move(m));
    if (is("{")) fn.children.push_back(block());
    else expect(";");
    c.node = std::move(fn);
    c.end = prev_end();
    return c;
  }

  // ---------------------------------------------------------------- statements

  Node block() {
    Node b(NodeType::Block);
    expect("{");
    while (!is("}")) {
      if (at_end()) fail("unterminated block");
      b.children.push_back(statement());
    }
    expect("}");
    return b;
  }

  Node inline_assembly() {
    expect("assembly");
    if (cur().kind == Tok::string) advance();
    if (is("(")) skip_balanced_parens();
    if (!is("{")) fail("expected assembly block");
    skip_balanced_braces();
    return Node(NodeType::InlineAssembly);
  }

  // Variable declaration statements look like expressions until the name
  // after the type; try the declaration first and rewind on failure.
  bool try_declaration(Node& out) {
    std::size_t save = pos_;
    try {
      if (is("(")) {
        // (uint a, , uint b) = ...
        advance();
        Node stmt(NodeType::VariableDeclarationStatement);
        bool any = false;
        for (;;) {
          if (is(",")) { advance(); continue; }
          if (is(")")) break;
          Node decl(NodeType::VariableDeclaration, {type_name()});
          while (data_location()) advance();
          if (!is_ident() || keyword(cur().text)) throw Error(ErrorCode::ParseFailure, "not a declaration");
          advance();
          stmt.children.push_back(std::move(decl));
          any = true;
          if (!accept(",")) break;
        }
        if (!any) throw Error(ErrorCode::ParseFailure, "not a declaration");
        expect(")");
        expect("=");
        stmt.children.push_back(expression());
        expect(";");
        out = std::move(stmt);
        return true;
      }
      if (!is_type_start()) return false;
      Node decl(NodeType::VariableDeclaration, {type_name()});
      while (data_location()) advance();
      if (!is_ident() || keyword(cur().text)) throw Error(ErrorCode::ParseFailure, "not a declaration");
      advance();
      Node stmt(NodeType::VariableDeclarationStatement, {std::move(decl)});
      if (accept("=")) stmt.children.push_back(expression());
      expect(";");
      out = std::move(stmt);
      return true;
    } catch (const Error&) {
      pos_ = save;
      return false;
    }
  }

  Node simple_statement() {
    Node d;
    if (try_declaration(d)) return d;
    Node e(NodeType::ExpressionStatement, {expression()});
    expect(";");
    return e;
  }

  Node statement() {
    if (is("{")) return block();
    if (accept("if")) {
      expect("(");
      Node cond = expression();
      expect(")");
      Node then = statement();
      Node els(NodeType::Empty);
      if (accept("else")) els = statement();
      return Node(NodeType::IfStatement, {std::move(cond), std::move(then), std::move(els)});
    }
    if (accept("while")) {
      expect("(");
      Node cond = expression();
      expect(")");
      return Node(NodeType::WhileStatement, {std::move(cond), statement()});
    }
    if (accept("do")) {
      Node body = statement();
      expect("while");
      expect("(");
      Node cond = expression();
      expect(")");
      expect(";");
      return Node(NodeType::DoWhileStatement, {std::move(cond), std::move(body)});
    }
    if (accept("for")) {
      expect("(");
      Node init(NodeType::Empty), cond(NodeType::Empty), step(NodeType::Empty);
      if (!accept(";")) init = simple_statement();
      if (!is(";")) cond = expression();
      expect(";");
      if (!is(")")) step = Node(NodeType::ExpressionStatement, {expression()});
      expect(")");
      return Node(NodeType::ForStatement, {std::move(init), std::move(cond), std::move(step), statement()});
    }
    if (accept("return")) {
      Node r(NodeType::Return);
      if (!is(";")) r.children.push_back(expression());
      expect(";");
      return r;
    }
    if (accept("break")) { expect(";"); return Node(NodeType::Break); }
    if (accept("continue")) { expect(";"); return Node(NodeType::Continue); }
    if (accept("throw")) { expect(";"); return Node(NodeType::Throw); }
    if (accept("emit")) {
      Node call = expression();
      expect(";");
      return Node(NodeType::EmitStatement, {std::move(call)});
    }
    if (is("revert") && peek(1).kind == Tok::ident) {
      advance();
      Node call = expression();
      expect(";");
      return Node(NodeType::RevertStatement, {std::move(call)});
    }
    if (is("assembly")) return inline_assembly();
    if (is("unchecked") && peek_is(1, "{")) {
      advance();
      Node b = block();
      b.type = NodeType::UncheckedBlock;
      return b;
    }
    if (is("_") && peek_is(1, ";")) {
      advance();
      advance();
      return Node(NodeType::PlaceholderStatement);
    }
    if (accept("try")) {
      Node t(NodeType::TryStatement, {expression()});
      if (accept("returns")) t.children.push_back(Node(NodeType::TryCatchClause, {parameter_list(), block()}));
      else t.children.push_back(Node(NodeType::TryCatchClause, {block()}));
      while (accept("catch")) {
        Node clause(NodeType::TryCatchClause);
        if (is_ident()) advance();
        if (is("(")) clause.children.push_back(parameter_list());
        clause.children.push_back(block());
        t.children.push_back(std::move(clause));
      }
      return t;
    }
    return simple_statement();
  }

  // ---------------------------------------------------------------- expressions

  std::vector<Node> arguments() {
    std::vector<Node> args;
    expect("(");
    if (accept("{")) {
      // named arguments f({a: 1, b: 2})
      while (!is("}")) {
        expect_ident();
        expect(":");
        args.push_back(expression());
        if (!accept(",")) break;
      }
      expect("}");
    } else if (!is(")")) {
      do args.push_back(expression());
      while (accept(","));
    }
    expect(")");
    return args;
  }

  static int binary_precedence(std::string_view op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == ">" || op == "<=" || op == ">=") return 4;
    if (op == "|") return 5;
    if (op == "^") return 6;
    if (op == "&") return 7;
    if (op == "<<" || op == ">>" || op == ">>>") return 8;
    if (op == "+" || op == "-") return 9;
    if (op == "*" || op == "/" || op == "%") return 10;
    if (op == "**") return 11;
    return 0;
  }

  static bool assignment_op(std::string_view op) {
    return op == "=" || op == "+=" || op == "-=" || op == "*=" || op == "/=" || op == "%=" || op == "|=" ||
           op == "&=" || op == "^=" || op == "<<=" || op == ">>=" || op == ">>>=";
  }

 public:
  Node expression() {
    Node lhs = conditional();
    if (cur().kind == Tok::punct && assignment_op(cur().text)) {
      advance();
      return Node(NodeType::Assignment, {std::move(lhs), expression()});
    }
    return lhs;
  }

 private:
  Node conditional() {
    Node c = binary(1);
    if (accept("?")) {
      Node a = expression();
      expect(":");
      Node b = expression();
      return Node(NodeType::Conditional, {std::move(c), std::move(a), std::move(b)});
    }
    return c;
  }

  Node binary(int min_prec) {
    Node lhs = unary();
    for (;;) {
      if (cur().kind != Tok::punct) break;
      int p = binary_precedence(cur().text);
      if (p == 0 || p < min_prec) break;
      advance();
      Node rhs = p == 11 ? binary(p) : binary(p + 1);  // ** is right-associative
      lhs = Node(NodeType::BinaryOperation, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Node unary() {
    if (cur().kind == Tok::punct && (is("!") || is("~") || is("-") || is("+") || is("++") || is("--"))) {
      advance();
      return Node(NodeType::UnaryOperation, {unary()});
    }
    if (accept("delete")) return Node(NodeType::UnaryOperation, {unary()});
    return postfix(primary());
  }

  Node postfix(Node e) {
    for (;;) {
      if (is("(")) {
        Node call(NodeType::FunctionCall, {std::move(e)});
        for (auto& a : arguments()) call.children.push_back(std::move(a));
        e = std::move(call);
      } else if (is("[")) {
        advance();
        Node base = std::move(e);
        if (accept(":")) {
          Node r(NodeType::IndexRangeAccess, {std::move(base)});
          if (!is("]")) r.children.push_back(expression());
          e = std::move(r);
        } else if (is("]")) {
          // T[] used as a type expression, e.g. new uint[](n)
          e = Node(NodeType::IndexAccess, {std::move(base)});
        } else {
          Node idx = expression();
          if (accept(":")) {
            Node r(NodeType::IndexRangeAccess, {std::move(base), std::move(idx)});
            if (!is("]")) r.children.push_back(expression());
            e = std::move(r);
          } else {
            e = Node(NodeType::IndexAccess, {std::move(base), std::move(idx)});
          }
        }
        expect("]");
      } else if (is(".")) {
        advance();
        if (!is_ident()) fail("expected member name");
        advance();
        e = Node(NodeType::MemberAccess, {std::move(e)});
      } else if (is("{") && (peek(1).kind == Tok::ident && peek_is(2, ":"))) {
        // call options f{value: v}(...)
        advance();
        Node opts(NodeType::FunctionCallOptions, {std::move(e)});
        while (!is("}")) {
          expect_ident();
          expect(":");
          opts.children.push_back(expression());
          if (!accept(",")) break;
        }
        expect("}");
        e = std::move(opts);
      } else if (cur().kind == Tok::punct && (is("++") || is("--"))) {
        advance();
        e = Node(NodeType::UnaryOperation, {std::move(e)});
      } else {
        return e;
      }
    }
  }

  Node primary() {
    const Token& t = cur();
    if (t.kind == Tok::number) {
      advance();
      static const std::unordered_set<std::string_view> units = {"wei",     "gwei",  "szabo", "finney", "ether",
                                                                 "seconds", "minutes", "hours", "days", "weeks",
                                                                 "years"};
      if (is_ident() && units.count(cur().text)) advance();
      return Node(NodeType::Literal);
    }
    if (t.kind == Tok::string) {
      advance();
      while (cur().kind == Tok::string) advance();  // adjacent literals concatenate
      return Node(NodeType::Literal);
    }
    if (is("true") || is("false")) {
      advance();
      return Node(NodeType::Literal);
    }
    if (is("(")) {
      advance();
      Node tup(NodeType::TupleExpression);
      bool paren = true;
      for (;;) {
        if (is(")")) break;
        if (is(",")) {
          paren = false;
          advance();
          continue;
        }
        tup.children.push_back(expression());
        if (accept(",")) paren = false;
        else break;
      }
      expect(")");
      if (paren && tup.children.size() == 1) return std::move(tup.children[0]);
      return tup;
    }
    if (is("[")) {
      advance();
      Node arr(NodeType::TupleExpression);
      if (!is("]")) {
        do arr.children.push_back(expression());
        while (accept(","));
      }
      expect("]");
      return arr;
    }
    if (accept("new")) return Node(NodeType::NewExpression, {type_name()});
    if (is("payable") || (is_ident() && elementary(cur().text) && !is("var"))) {
      std::string w = advance().text;
      if (w == "address" && is("payable")) advance();
      return Node(NodeType::ElementaryTypeNameExpression, {Node(NodeType::ElementaryTypeName)});
    }
    if (is("mapping") || is("function")) fail("unexpected type in expression");
    if (is_ident() && (!keyword(t.text) || is("type") || is("revert"))) {
      advance();
      return Node(NodeType::Identifier);
    }
    fail("expected an expression");
  }
};

inline ParsedSource parse_source(std::string_view src) { return Parser(src).parse_source(); }

}  // namespace scamgraph::sim
