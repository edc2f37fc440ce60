#include "sexp.hpp"

#include <cctype>

#include "sqk/syntax.hpp"

namespace sqk::sexp {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Sexp run() {
    Sexp s = expr();
    skip();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected trailing input");
    return s;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  static bool symbol_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '"' &&
           c != ';';
  }

  Sexp expr() {
    skip();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    Sexp s;
    s.offset = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      s.kind = Sexp::Kind::List;
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw ParseError(s.offset, "unbalanced '('");
        if (text_[pos_] == ')') {
          ++pos_;
          return s;
        }
        s.items.push_back(expr());
      }
    }
    if (c == ')') throw ParseError(pos_, "unexpected ')'");
    if (c == '"') {
      ++pos_;
      s.kind = Sexp::Kind::String;
      while (true) {
        if (pos_ >= text_.size()) throw ParseError(s.offset, "unterminated string");
        const char d = text_[pos_++];
        if (d == '"') return s;
        if (d == '\\' && pos_ < text_.size() && (text_[pos_] == '"' || text_[pos_] == '\\')) {
          s.text += text_[pos_++];
        } else {
          s.text += d;
        }
      }
    }
    s.kind = Sexp::Kind::Symbol;
    while (pos_ < text_.size() && symbol_char(text_[pos_])) s.text += text_[pos_++];
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Sexp read(std::string_view text) { return Reader(text).run(); }

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    // A backslash is only an escape before '"' or '\', so "\/" stays literal.
    if (c == '"' || (c == '\\' && i + 1 < s.size() && (s[i + 1] == '"' || s[i + 1] == '\\')) ||
        (c == '\\' && i + 1 == s.size()))
      out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace sqk::sexp
