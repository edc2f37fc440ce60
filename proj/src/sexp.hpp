#ifndef SQK_SRC_SEXP_HPP
#define SQK_SRC_SEXP_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sqk::sexp {

// Minimal S-expression reader. Symbols are runs of characters other than
// whitespace, parentheses, '"' and ';'. Strings are double-quoted with \" and
// \\ as the only escapes. ';' starts a comment running to end of line.
struct Sexp {
  enum class Kind { Symbol, String, List };

  Kind kind = Kind::List;
  std::string text;
  std::vector<Sexp> items;
  std::size_t offset = 0;

  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
  bool is_string() const { return kind == Kind::String; }
  bool is_list() const { return kind == Kind::List; }
};

// Exactly one top-level expression. Throws ParseError.
Sexp read(std::string_view text);

std::string quote(std::string_view s);

}  // namespace sqk::sexp

#endif  // SQK_SRC_SEXP_HPP
