// Concrete syntax for memory-logic and hybrid formulas.
//
//   formula := imp
//   imp     := or ("->" imp)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | "<>" unary | "[]" unary | atom
//   atom    := "k" | "true" | "false" | "(" formula ")"
//
// The hybrid grammar adds IDENT atoms (nominals) and the unary binder
// "down" IDENT "." unary; there `k` is an ordinary nominal name.
// Whitespace is insignificant and '#' starts a comment running to end of line.

#ifndef MEMLOG_PARSER_HPP
#define MEMLOG_PARSER_HPP

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "memlog/formula.hpp"
#include "memlog/hybrid.hpp"

namespace memlog {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string found);

  // Byte offset of the offending token.
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
  std::string found_;
};

// Maximum parenthesis nesting accepted by the parsers.
inline constexpr std::size_t kMaxParenNesting = 1000;

Formula parse_formula(std::string_view text);

struct ParsedHFormula {
  HFormula formula;
  // Nominals not bound by an enclosing binder; a warning, not an error.
  std::set<std::string> free_nominals;
};

ParsedHFormula parse_hformula(std::string_view text);

}  // namespace memlog

#endif  // MEMLOG_PARSER_HPP
