#include "sqk/syntax.hpp"

#include <cctype>
#include <map>

namespace sqk {

bool is_uident(std::string_view s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  return true;
}

bool is_lident(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  return true;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula run() {
    Formula f = formula();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::string_view peek_ident() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end])))
      ++end;
    return text_.substr(pos_, end - pos_);
  }

  std::string lident() {
    const std::string_view id = peek_ident();
    if (!is_lident(id) || id == "forall" || id == "exists")
      fail("expected an individual variable");
    pos_ += id.size();
    return std::string(id);
  }

  Formula formula() { return implication(); }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept("=>")) return imp(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept("\\/")) f = disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept("/\\")) f = conj(f, unary());
    return f;
  }

  Formula unary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept("~")) return neg(unary());
    if (accept("{")) {
      Formula f = formula();
      expect("}");
      return squash(f);
    }
    if (accept("(")) {
      Formula f = formula();
      expect(")");
      return f;
    }
    const std::string_view id = peek_ident();
    if (id == "forall" || id == "exists") {
      pos_ += id.size();
      std::string v = lident();
      expect(".");
      Formula body = formula();
      return id == "forall" ? forall(std::move(v), body) : exists(std::move(v), body);
    }
    if (id == "False" || id == "True") {
      pos_ += id.size();
      return id == "False" ? falsum() : verum();
    }
    if (is_uident(id)) {
      const std::size_t at = pos_;
      pos_ += id.size();
      std::string name(id);
      if (accept("(")) {
        std::string arg = lident();
        expect(")");
        declare(name, true, at);
        return pred(std::move(name), std::move(arg));
      }
      declare(name, false, at);
      return atom(std::move(name));
    }
    fail("expected a formula");
  }

  // Arity map: every name is either a propositional atom or a unary predicate.
  void declare(const std::string& name, bool unary, std::size_t at) {
    auto [it, inserted] = arity_.emplace(name, unary);
    if (!inserted && it->second != unary)
      throw ParseError(at, "'" + name + "' used both as atom and as predicate");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, bool> arity_;
};

enum Prec { kImp = 0, kOr = 1, kAnd = 2, kUnary = 3 };

// `open_right`: nothing follows this subformula at the current nesting level,
// so a trailing quantifier may extend to the end without parentheses.
void print_min(const Formula& f, int prec, bool open_right, std::string& out) {
  auto binary = [&](int own, const char* op, int lprec, int rprec) {
    const bool paren = prec > own;
    if (paren) out += '(';
    print_min(f.lhs(), lprec, false, out);
    out += op;
    print_min(f.rhs(), rprec, paren || open_right, out);
    if (paren) out += ')';
  };
  switch (f.kind()) {
    case Connective::Atom:
      out += f.name();
      return;
    case Connective::Pred:
      out += f.name() + "(" + f.var() + ")";
      return;
    case Connective::False:
      out += "False";
      return;
    case Connective::True:
      out += "True";
      return;
    case Connective::Imp:
      if (f.is_negation()) {
        out += '~';
        print_min(f.lhs(), kUnary, open_right, out);
        return;
      }
      binary(kImp, " => ", kOr, kImp);
      return;
    case Connective::Or:
      binary(kOr, " \\/ ", kOr, kAnd);
      return;
    case Connective::And:
      binary(kAnd, " /\\ ", kAnd, kUnary);
      return;
    case Connective::Squash:
      out += '{';
      print_min(f.body(), kImp, true, out);
      out += '}';
      return;
    case Connective::Forall:
    case Connective::Exists: {
      if (!open_right) out += '(';
      out += f.is(Connective::Forall) ? "forall " : "exists ";
      out += f.var() + ". ";
      print_min(f.body(), kImp, true, out);
      if (!open_right) out += ')';
      return;
    }
  }
}

void print_full(const Formula& f, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print_full(f.lhs(), out);
    out += op;
    print_full(f.rhs(), out);
    out += ')';
  };
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Pred:
    case Connective::False:
    case Connective::True:
      print_min(f, kUnary, true, out);
      return;
    case Connective::Imp:
      binary(" => ");
      return;
    case Connective::Or:
      binary(" \\/ ");
      return;
    case Connective::And:
      binary(" /\\ ");
      return;
    case Connective::Squash:
      out += '{';
      print_full(f.body(), out);
      out += '}';
      return;
    case Connective::Forall:
    case Connective::Exists:
      out += f.is(Connective::Forall) ? "(forall " : "(exists ";
      out += f.var() + ". ";
      print_full(f.body(), out);
      out += ')';
      return;
  }
}

void print_sexp(const Formula& f, std::string& out) {
  auto node = [&](const char* head, std::initializer_list<const Formula*> kids) {
    out += '(';
    out += head;
    for (const Formula* k : kids) {
      out += ' ';
      print_sexp(*k, out);
    }
    out += ')';
  };
  switch (f.kind()) {
    case Connective::Atom:
      out += f.name();
      return;
    case Connective::Pred:
      out += "(" + f.name() + " " + f.var() + ")";
      return;
    case Connective::False:
      out += "False";
      return;
    case Connective::True:
      out += "True";
      return;
    case Connective::Imp:
      if (f.is_negation()) return node("~", {&f.lhs()});
      return node("=>", {&f.lhs(), &f.rhs()});
    case Connective::Or:
      return node("\\/", {&f.lhs(), &f.rhs()});
    case Connective::And:
      return node("/\\", {&f.lhs(), &f.rhs()});
    case Connective::Squash:
      return node("{}", {&f.body()});
    case Connective::Forall:
    case Connective::Exists:
      out += f.is(Connective::Forall) ? "(forall " : "(exists ";
      out += f.var() + " ";
      print_sexp(f.body(), out);
      out += ')';
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).run(); }

std::string print_formula(const Formula& f) {
  std::string out;
  print_min(f, kImp, true, out);
  return out;
}

std::string print_formula_full(const Formula& f) {
  std::string out;
  print_full(f, out);
  return out;
}

std::string print_formula_sexp(const Formula& f) {
  std::string out;
  print_sexp(f, out);
  return out;
}

}  // namespace sqk
