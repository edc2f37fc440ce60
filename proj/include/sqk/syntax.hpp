#ifndef SQK_SYNTAX_HPP
#define SQK_SYNTAX_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sqk/formula.hpp"

namespace sqk {

// Malformed input, reported at a byte offset into the source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("at byte " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// ASCII grammar, whitespace-insensitive between tokens:
//
//   formula := imp
//   imp     := or ("=>" imp)?
//   or      := and ("\/" and)*
//   and     := unary ("/\" unary)*
//   unary   := "~" unary | "{" formula "}" | "(" formula ")" | quant | atom
//   quant   := ("forall" | "exists") lident "." formula
//   atom    := "False" | "True" | uident | uident "(" lident ")"
//
// A name used both as a propositional atom and as a predicate is rejected.
Formula parse_formula(std::string_view text);

// Canonical form with minimal parentheses; Imp(F, False) prints as ~F.
std::string print_formula(const Formula& f);

// Every binary node and quantifier wrapped in parentheses. Used to check that
// the grammar admits a single parse.
std::string print_formula_full(const Formula& f);

// Prefix S-expression form, e.g. (=> A (~ B)).
std::string print_formula_sexp(const Formula& f);

bool is_uident(std::string_view s);
bool is_lident(std::string_view s);

}  // namespace sqk

#endif  // SQK_SYNTAX_HPP
