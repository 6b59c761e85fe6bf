#include "memlog/parser.hpp"

#include <cctype>
#include <optional>
#include <utility>

namespace memlog {

namespace {

std::string describe(const std::vector<std::string>& expected, const std::string& found, std::size_t offset) {
  std::string msg = "syntax error at byte " + std::to_string(offset) + ": found " + found + ", expected one of";
  for (const auto& e : expected) msg += " " + e;
  return msg;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string found)
    : std::runtime_error(describe(expected, found, offset)),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok { Known, True, False, Not, And, Or, Imp, Dia, Box, LParen, RParen, Down, Dot, Ident, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
};

class Lexer {
 public:
  Lexer(std::string_view src, bool hybrid) : src_(src), hybrid_(hybrid) {}

  Token next() {
    skip_blank();
    const std::size_t at = pos_;
    if (pos_ >= src_.size()) return {Tok::End, at, {}};
    const char c = src_[pos_];
    auto two = [&](char second) { return pos_ + 1 < src_.size() && src_[pos_ + 1] == second; };
    switch (c) {
      case '~': return single(Tok::Not);
      case '&': return single(Tok::And);
      case '|': return single(Tok::Or);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '.':
        if (hybrid_) return single(Tok::Dot);
        break;
      case '-':
        if (two('>')) return pair(Tok::Imp);
        break;
      case '<':
        if (two('>')) return pair(Tok::Dia);
        break;
      case '[':
        if (two(']')) return pair(Tok::Box);
        break;
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_ + 1;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      const std::string_view word = src_.substr(pos_, end - pos_);
      pos_ = end;
      if (word == "true") return {Tok::True, at, word};
      if (word == "false") return {Tok::False, at, word};
      if (hybrid_) {
        if (word == "down") return {Tok::Down, at, word};
        return {Tok::Ident, at, word};
      }
      if (word == "k") return {Tok::Known, at, word};
      throw SyntaxError(at, {"k", "true", "false"}, "'" + std::string(word) + "'");
    }
    throw SyntaxError(at, {"a formula token"}, "'" + std::string(1, c) + "'");
  }

 private:
  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  Token single(Tok k) { return {k, pos_, src_.substr(pos_++, 1)}; }
  Token pair(Tok k) {
    Token t{k, pos_, src_.substr(pos_, 2)};
    pos_ += 2;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  bool hybrid_;
};

struct CoreBuilder {
  using Node = Formula;
  static constexpr bool kHybrid = false;
  static Node known_atom() { return known(); }
  static Node truth() { return top(); }
  static Node falsity() { return bot(); }
  static Node nominal(std::string_view) { throw std::logic_error("no nominals in the core language"); }
  static Node negate(Node f) { return neg(std::move(f)); }
  static Node diamond(Node f) { return dia(std::move(f)); }
  static Node boxed(Node f) { return box(std::move(f)); }
  static Node bind(std::string_view, Node) { throw std::logic_error("no binder in the core language"); }
  static Node both(Node a, Node b) { return conj(std::move(a), std::move(b)); }
  static Node either(Node a, Node b) { return disj(std::move(a), std::move(b)); }
  static Node implies(Node a, Node b) { return imp(std::move(a), std::move(b)); }
};

struct HybridBuilder {
  using Node = HFormula;
  static constexpr bool kHybrid = true;
  static Node known_atom() { throw std::logic_error("no k atom in hybrid syntax"); }
  static Node truth() { return htop(); }
  static Node falsity() { return hbot(); }
  static Node nominal(std::string_view name) { return HFormula::nominal(std::string(name)); }
  static Node negate(Node f) { return HFormula::neg(std::move(f)); }
  static Node diamond(Node f) { return HFormula::dia(std::move(f)); }
  static Node boxed(Node f) { return hbox(std::move(f)); }
  static Node bind(std::string_view name, Node f) { return HFormula::down(std::string(name), std::move(f)); }
  static Node both(Node a, Node b) { return HFormula::conj(std::move(a), std::move(b)); }
  static Node either(Node a, Node b) { return hdisj(std::move(a), std::move(b)); }
  static Node implies(Node a, Node b) { return himp(std::move(a), std::move(b)); }
};

std::string token_name(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + std::string(t.text) + "'";
}

template <typename B>
class Parser {
 public:
  using Node = typename B::Node;

  explicit Parser(std::string_view src) : lex_(src, B::kHybrid) { advance(); }

  Node parse_all() {
    Node f = parse_imp();
    if (cur_.kind != Tok::End) fail({"'&'", "'|'", "'->'", "end of input"});
    return f;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(cur_.offset, std::move(expected), token_name(cur_));
  }

  std::vector<std::string> unary_starters() const {
    std::vector<std::string> out{"'~'", "'<>'", "'[]'", "'('", "'true'", "'false'"};
    if constexpr (B::kHybrid) {
      out.push_back("'down'");
      out.push_back("identifier");
    } else {
      out.push_back("'k'");
    }
    return out;
  }

  // imp := or ("->" imp)?  -- right associative, iteratively.
  Node parse_imp() {
    std::vector<Node> chain{parse_or()};
    while (cur_.kind == Tok::Imp) {
      advance();
      chain.push_back(parse_or());
    }
    Node acc = std::move(chain.back());
    for (std::size_t i = chain.size() - 1; i-- > 0;) acc = B::implies(std::move(chain[i]), std::move(acc));
    return acc;
  }

  Node parse_or() {
    Node acc = parse_and();
    while (cur_.kind == Tok::Or) {
      advance();
      acc = B::either(std::move(acc), parse_and());
    }
    return acc;
  }

  Node parse_and() {
    Node acc = parse_unary();
    while (cur_.kind == Tok::And) {
      advance();
      acc = B::both(std::move(acc), parse_unary());
    }
    return acc;
  }

  // Prefix operators are collected first so long chains do not recurse.
  Node parse_unary() {
    struct Prefix {
      Tok kind;
      std::string_view name;
    };
    std::vector<Prefix> prefixes;
    for (;;) {
      if (cur_.kind == Tok::Not || cur_.kind == Tok::Dia || cur_.kind == Tok::Box) {
        prefixes.push_back({cur_.kind, {}});
        advance();
      } else if (B::kHybrid && cur_.kind == Tok::Down) {
        advance();
        if (cur_.kind != Tok::Ident) fail({"identifier"});
        const std::string_view name = cur_.text;
        advance();
        if (cur_.kind != Tok::Dot) fail({"'.'"});
        advance();
        prefixes.push_back({Tok::Down, name});
      } else {
        break;
      }
    }
    Node f = parse_atom();
    for (auto it = prefixes.rbegin(); it != prefixes.rend(); ++it) {
      switch (it->kind) {
        case Tok::Not: f = B::negate(std::move(f)); break;
        case Tok::Dia: f = B::diamond(std::move(f)); break;
        case Tok::Box: f = B::boxed(std::move(f)); break;
        default: f = B::bind(it->name, std::move(f)); break;
      }
    }
    return f;
  }

  Node parse_atom() {
    switch (cur_.kind) {
      case Tok::Known:
        if constexpr (!B::kHybrid) {
          advance();
          return B::known_atom();
        }
        break;
      case Tok::Ident:
        if constexpr (B::kHybrid) {
          Node n = B::nominal(cur_.text);
          advance();
          return n;
        }
        break;
      case Tok::True:
        advance();
        return B::truth();
      case Tok::False:
        advance();
        return B::falsity();
      case Tok::LParen: {
        if (++nesting_ > kMaxParenNesting) fail({"shallower parenthesis nesting"});
        advance();
        Node f = parse_imp();
        if (cur_.kind != Tok::RParen) fail({"'&'", "'|'", "'->'", "')'"});
        advance();
        --nesting_;
        return f;
      }
      default:
        break;
    }
    fail(unary_starters());
  }

  Lexer lex_;
  Token cur_{Tok::End, 0, {}};
  std::size_t nesting_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser<CoreBuilder>(text).parse_all(); }

ParsedHFormula parse_hformula(std::string_view text) {
  HFormula h = Parser<HybridBuilder>(text).parse_all();
  auto free = free_nominals(h);
  return {std::move(h), std::move(free)};
}

}  // namespace memlog
