#include "sqk/evidence.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "sqk/syntax.hpp"

namespace sqk {

Term make_term(Term::Node n) {
  n.size = 1;
  for (const auto& k : n.kids) n.size += k.size();
  return Term(std::make_shared<const Term::Node>(std::move(n)));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const std::string& Term::name2() const { return node_->name2; }
const Term& Term::child(std::size_t i) const { return node_->kids.at(i); }
std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->name == b.node_->name &&
         a.node_->name2 == b.node_->name2 && a.node_->kids == b.node_->kids;
}

Term var(std::string name) { return make_term({TermKind::Var, std::move(name), {}, {}}); }
Term lam(std::string binder, Term body) {
  return make_term({TermKind::Lam, std::move(binder), {}, {std::move(body)}});
}
Term ap(Term fun, Term arg) {
  return make_term({TermKind::Ap, {}, {}, {std::move(fun), std::move(arg)}});
}
Term pair(Term left, Term right) {
  return make_term({TermKind::Pair, {}, {}, {std::move(left), std::move(right)}});
}
Term fst(Term t) { return make_term({TermKind::Fst, {}, {}, {std::move(t)}}); }
Term snd(Term t) { return make_term({TermKind::Snd, {}, {}, {std::move(t)}}); }
Term inl(Term t) { return make_term({TermKind::Inl, {}, {}, {std::move(t)}}); }
Term inr(Term t) { return make_term({TermKind::Inr, {}, {}, {std::move(t)}}); }
Term case_of(Term scrutinee, std::string left_binder, Term left, std::string right_binder,
             Term right) {
  return make_term({TermKind::Case, std::move(left_binder), std::move(right_binder),
                    {std::move(scrutinee), std::move(left), std::move(right)}});
}
Term star() {
  static const Term t = make_term({TermKind::Star, {}, {}, {}});
  return t;
}
Term any(Term t) { return make_term({TermKind::Any, {}, {}, {std::move(t)}}); }

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto under = [&](const std::string& binder, const Term& body) {
    bound.push_back(binder);
    collect_free(body, bound, out);
    bound.pop_back();
  };
  switch (t.kind()) {
    case TermKind::Var:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
      return;
    case TermKind::Lam:
      under(t.name(), t.child(0));
      return;
    case TermKind::Case:
      collect_free(t.child(0), bound, out);
      under(t.name(), t.child(1));
      under(t.name2(), t.child(2));
      return;
    case TermKind::Star:
      return;
    case TermKind::Ap:
    case TermKind::Pair:
      collect_free(t.child(0), bound, out);
      collect_free(t.child(1), bound, out);
      return;
    default:
      collect_free(t.child(0), bound, out);
      return;
  }
}

std::string fresh_name(std::string base, const std::set<std::string>& avoid) {
  do base += '\''; while (avoid.contains(base));
  return base;
}

// Substitutes under one binder, renaming it if it would capture.
std::pair<std::string, Term> subst_binder(const std::string& binder, const Term& body,
                                          const std::string& name, const Term& replacement,
                                          const std::set<std::string>& repl_free) {
  if (binder == name) return {binder, body};
  const auto body_free = free_vars(body);
  if (!body_free.contains(name)) return {binder, body};
  if (!repl_free.contains(binder)) return {binder, substitute(body, name, replacement)};
  std::set<std::string> avoid = repl_free;
  avoid.insert(body_free.begin(), body_free.end());
  avoid.insert(name);
  std::string renamed = fresh_name(binder, avoid);
  Term body2 = substitute(body, binder, var(renamed));
  return {renamed, substitute(body2, name, replacement)};
}

Term rebuild(const Term& t, std::vector<Term> kids) {
  Term::Node n{t.kind(), t.name(), t.name2(), std::move(kids)};
  return make_term(std::move(n));
}

Term subst_impl(const Term& body, const std::string& name, const Term& replacement,
                const std::set<std::string>& repl_free) {
  switch (body.kind()) {
    case TermKind::Var:
      return body.name() == name ? replacement : body;
    case TermKind::Star:
      return body;
    case TermKind::Lam: {
      auto [b, inner] = subst_binder(body.name(), body.child(0), name, replacement, repl_free);
      return lam(std::move(b), std::move(inner));
    }
    case TermKind::Case: {
      Term s = subst_impl(body.child(0), name, replacement, repl_free);
      auto [x, l] = subst_binder(body.name(), body.child(1), name, replacement, repl_free);
      auto [y, r] = subst_binder(body.name2(), body.child(2), name, replacement, repl_free);
      return case_of(std::move(s), std::move(x), std::move(l), std::move(y), std::move(r));
    }
    case TermKind::Ap:
    case TermKind::Pair:
      return rebuild(body, {subst_impl(body.child(0), name, replacement, repl_free),
                            subst_impl(body.child(1), name, replacement, repl_free)});
    default:
      return rebuild(body, {subst_impl(body.child(0), name, replacement, repl_free)});
  }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(t, bound, out);
  return out;
}

Term substitute(const Term& body, const std::string& name, const Term& replacement) {
  return subst_impl(body, name, replacement, free_vars(replacement));
}

namespace {

std::optional<Term> contract(const Term& t) {
  switch (t.kind()) {
    case TermKind::Ap:
      if (t.child(0).is(TermKind::Lam))
        return substitute(t.child(0).child(0), t.child(0).name(), t.child(1));
      return std::nullopt;
    case TermKind::Fst:
      if (t.child(0).is(TermKind::Pair)) return t.child(0).child(0);
      return std::nullopt;
    case TermKind::Snd:
      if (t.child(0).is(TermKind::Pair)) return t.child(0).child(1);
      return std::nullopt;
    case TermKind::Case: {
      const Term& s = t.child(0);
      if (s.is(TermKind::Inl)) return substitute(t.child(1), t.name(), s.child(0));
      if (s.is(TermKind::Inr)) return substitute(t.child(2), t.name2(), s.child(0));
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

ReductionOutcome reduce_step(const Term& t) {
  if (auto r = contract(t)) return r;
  const std::size_t arity = t.is(TermKind::Var) || t.is(TermKind::Star) ? 0
                            : t.is(TermKind::Case)                       ? 3
                            : t.is(TermKind::Ap) || t.is(TermKind::Pair) ? 2
                                                                         : 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (auto r = reduce_step(t.child(i))) {
      std::vector<Term> kids;
      for (std::size_t j = 0; j < arity; ++j) kids.push_back(j == i ? *r : t.child(j));
      return rebuild(t, std::move(kids));
    }
  }
  return std::nullopt;
}

std::optional<Term> normalize(const Term& t, std::size_t fuel) {
  Term cur = t;
  for (std::size_t steps = 0;; ++steps) {
    auto next = reduce_step(cur);
    if (!next) return cur;
    if (steps == fuel) return std::nullopt;
    cur = std::move(*next);
  }
}

namespace {

using Scope = std::vector<std::pair<std::string, std::string>>;

bool alpha_in(const Term& a, const Term& b, Scope& scope) {
  if (a.kind() != b.kind()) return false;
  auto under = [&](const std::string& x, const std::string& y, const Term& l, const Term& r) {
    scope.emplace_back(x, y);
    const bool ok = alpha_in(l, r, scope);
    scope.pop_back();
    return ok;
  };
  switch (a.kind()) {
    case TermKind::Var:
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        const bool ha = it->first == a.name();
        const bool hb = it->second == b.name();
        if (ha || hb) return ha && hb;
      }
      return a.name() == b.name();
    case TermKind::Star:
      return true;
    case TermKind::Lam:
      return under(a.name(), b.name(), a.child(0), b.child(0));
    case TermKind::Case:
      return alpha_in(a.child(0), b.child(0), scope) &&
             under(a.name(), b.name(), a.child(1), b.child(1)) &&
             under(a.name2(), b.name2(), a.child(2), b.child(2));
    case TermKind::Ap:
    case TermKind::Pair:
      return alpha_in(a.child(0), b.child(0), scope) && alpha_in(a.child(1), b.child(1), scope);
    default:
      return alpha_in(a.child(0), b.child(0), scope);
  }
}

// Type inference by first-order unification over formula types. Atoms are
// rigid constants; metavariables are union-find cells.
class Unifier {
 public:
  enum class K { Meta, Atom, False, True, And, Or, Imp, Squash };

  int fresh() { return cell(K::Meta); }

  std::optional<int> from_formula(const Formula& f) {
    switch (f.kind()) {
      case Connective::Atom:
        return cell(K::Atom, f.name());
      case Connective::Pred:
        return cell(K::Atom, f.name() + "(" + f.var() + ")");
      case Connective::False:
        return cell(K::False);
      case Connective::True:
        return cell(K::True);
      case Connective::Squash: {
        auto a = from_formula(f.body());
        if (!a) return std::nullopt;
        return cell(K::Squash, {}, *a);
      }
      case Connective::And:
      case Connective::Or:
      case Connective::Imp: {
        auto a = from_formula(f.lhs());
        auto b = from_formula(f.rhs());
        if (!a || !b) return std::nullopt;
        const K k = f.is(Connective::And) ? K::And : f.is(Connective::Or) ? K::Or : K::Imp;
        return cell(k, {}, *a, *b);
      }
      default:
        return std::nullopt;
    }
  }

  int cell(K k, std::string name = {}, int a = -1, int b = -1) {
    cells_.push_back({k, std::move(name), a, b, -1});
    return static_cast<int>(cells_.size()) - 1;
  }

  int find(int t) {
    while (cells_[t].k == K::Meta && cells_[t].bound >= 0) t = cells_[t].bound;
    return t;
  }

  bool unify(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return true;
    if (cells_[x].k == K::Meta) return bind(x, y);
    if (cells_[y].k == K::Meta) return bind(y, x);
    const Cell& cx = cells_[x];
    const Cell& cy = cells_[y];
    if (cx.k != cy.k || cx.name != cy.name) return false;
    const int xa = cx.a, xb = cx.b, ya = cy.a, yb = cy.b;
    if (xa >= 0 && !unify(xa, ya)) return false;
    if (xb >= 0 && !unify(xb, yb)) return false;
    return true;
  }

  K kind_of(int t) { return cells_[find(t)].k; }

 private:
  struct Cell {
    K k;
    std::string name;
    int a, b;
    int bound;
  };

  bool occurs(int meta, int t) {
    t = find(t);
    if (t == meta) return true;
    const Cell& c = cells_[t];
    return (c.a >= 0 && occurs(meta, c.a)) || (c.b >= 0 && occurs(meta, c.b));
  }

  bool bind(int meta, int t) {
    if (occurs(meta, t)) return false;
    cells_[meta].bound = t;
    return true;
  }

  std::vector<Cell> cells_;
};

class Inference {
 public:
  using K = Unifier::K;

  std::optional<int> infer(const Term& t, std::vector<std::pair<std::string, int>>& env) {
    switch (t.kind()) {
      case TermKind::Var:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t.name()) return it->second;
        return std::nullopt;
      case TermKind::Lam: {
        const int dom = u.fresh();
        env.emplace_back(t.name(), dom);
        auto cod = infer(t.child(0), env);
        env.pop_back();
        if (!cod) return std::nullopt;
        return u.cell(K::Imp, {}, dom, *cod);
      }
      case TermKind::Ap: {
        auto f = infer(t.child(0), env);
        if (!f) return std::nullopt;
        auto a = infer(t.child(1), env);
        if (!a) return std::nullopt;
        const int res = u.fresh();
        if (!u.unify(*f, u.cell(K::Imp, {}, *a, res))) return std::nullopt;
        return res;
      }
      case TermKind::Pair: {
        auto l = infer(t.child(0), env);
        if (!l) return std::nullopt;
        auto r = infer(t.child(1), env);
        if (!r) return std::nullopt;
        return u.cell(K::And, {}, *l, *r);
      }
      case TermKind::Fst:
      case TermKind::Snd: {
        auto p = infer(t.child(0), env);
        if (!p) return std::nullopt;
        const int l = u.fresh(), r = u.fresh();
        if (!u.unify(*p, u.cell(K::And, {}, l, r))) return std::nullopt;
        return t.is(TermKind::Fst) ? l : r;
      }
      case TermKind::Inl:
      case TermKind::Inr: {
        auto x = infer(t.child(0), env);
        if (!x) return std::nullopt;
        const int other = u.fresh();
        return t.is(TermKind::Inl) ? u.cell(K::Or, {}, *x, other) : u.cell(K::Or, {}, other, *x);
      }
      case TermKind::Case: {
        auto s = infer(t.child(0), env);
        if (!s) return std::nullopt;
        const int l = u.fresh(), r = u.fresh();
        if (!u.unify(*s, u.cell(K::Or, {}, l, r))) return std::nullopt;
        env.emplace_back(t.name(), l);
        auto tl = infer(t.child(1), env);
        env.pop_back();
        if (!tl) return std::nullopt;
        env.emplace_back(t.name2(), r);
        auto tr = infer(t.child(2), env);
        env.pop_back();
        if (!tr || !u.unify(*tl, *tr)) return std::nullopt;
        return tl;
      }
      case TermKind::Star: {
        const int m = u.fresh();
        stars.push_back(m);
        return m;
      }
      case TermKind::Any: {
        auto x = infer(t.child(0), env);
        if (!x || !u.unify(*x, u.cell(K::False))) return std::nullopt;
        return u.fresh();
      }
    }
    return std::nullopt;
  }

  // star inhabits True and every squash; an unconstrained type can be True.
  bool stars_ok() {
    for (int s : stars) {
      const K k = u.kind_of(s);
      if (k != K::Meta && k != K::True && k != K::Squash) return false;
    }
    return true;
  }

  Unifier u;
  std::vector<int> stars;
};

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  Scope scope;
  return alpha_in(a, b, scope);
}

bool check_evidence(const Term& t, const Formula& f,
                    std::span<const Hypotheses::value_type> hyps) {
  Inference inf;
  std::vector<std::pair<std::string, int>> env;
  for (const auto& [name, hf] : hyps) {
    auto ty = inf.u.from_formula(hf);
    if (!ty) return false;
    env.emplace_back(name, *ty);
  }
  auto goal = inf.u.from_formula(f);
  if (!goal) return false;
  auto ty = inf.infer(t, env);
  return ty && inf.u.unify(*ty, *goal) && inf.stars_ok();
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term run() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string word() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected a term");
    std::size_t end = pos_;
    while (end < text_.size() && ident_char(text_[end])) ++end;
    std::string w(text_.substr(pos_, end - pos_));
    pos_ = end;
    return w;
  }

  static bool keyword(const std::string& w) {
    static const std::set<std::string> kws = {"lam", "ap",  "pair", "fst",  "snd",
                                              "inl", "inr", "case", "star", "any"};
    return kws.contains(w);
  }

  std::string binder() {
    const std::size_t at = pos_;
    std::string w = word();
    if (keyword(w)) throw ParseError(at, "keyword '" + w + "' used as a variable");
    return w;
  }

  Term term() {
    Term t = primary();
    while (accept('(')) {
      Term arg = term();
      expect(')');
      t = ap(t, arg);
    }
    return t;
  }

  Term primary() {
    if (accept('(')) {
      Term t = term();
      expect(')');
      return t;
    }
    const std::size_t at = pos_;
    const std::string w = word();
    auto unary = [&](Term (*ctor)(Term)) {
      expect('(');
      Term t = term();
      expect(')');
      return ctor(t);
    };
    auto binary = [&](Term (*ctor)(Term, Term)) {
      expect('(');
      Term a = term();
      expect(';');
      Term b = term();
      expect(')');
      return ctor(a, b);
    };
    if (w == "star") return star();
    if (w == "lam") {
      expect('(');
      std::string x = binder();
      expect('.');
      Term b = term();
      expect(')');
      return lam(std::move(x), b);
    }
    if (w == "ap") return binary(&ap);
    if (w == "pair") return binary(&pair);
    if (w == "fst") return unary(&fst);
    if (w == "snd") return unary(&snd);
    if (w == "inl") return unary(&inl);
    if (w == "inr") return unary(&inr);
    if (w == "any") return unary(&any);
    if (w == "case") {
      expect('(');
      Term s = term();
      expect(';');
      std::string x = binder();
      expect('.');
      Term l = term();
      expect(';');
      std::string y = binder();
      expect('.');
      Term r = term();
      expect(')');
      return case_of(s, std::move(x), l, std::move(y), r);
    }
    if (keyword(w)) throw ParseError(at, "malformed '" + w + "'");
    return var(w);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_impl(const Term& t, std::string& out) {
  auto wrap = [&](const char* head, const Term& x) {
    out += head;
    out += '(';
    print_impl(x, out);
    out += ')';
  };
  switch (t.kind()) {
    case TermKind::Var:
      out += t.name();
      return;
    case TermKind::Star:
      out += "star";
      return;
    case TermKind::Lam:
      out += "lam(" + t.name() + ".";
      print_impl(t.child(0), out);
      out += ')';
      return;
    case TermKind::Ap:
      print_impl(t.child(0), out);
      out += '(';
      print_impl(t.child(1), out);
      out += ')';
      return;
    case TermKind::Pair:
      out += "pair(";
      print_impl(t.child(0), out);
      out += ';';
      print_impl(t.child(1), out);
      out += ')';
      return;
    case TermKind::Fst: return wrap("fst", t.child(0));
    case TermKind::Snd: return wrap("snd", t.child(0));
    case TermKind::Inl: return wrap("inl", t.child(0));
    case TermKind::Inr: return wrap("inr", t.child(0));
    case TermKind::Any: return wrap("any", t.child(0));
    case TermKind::Case:
      out += "case(";
      print_impl(t.child(0), out);
      out += ';' + t.name() + '.';
      print_impl(t.child(1), out);
      out += ';' + t.name2() + '.';
      print_impl(t.child(2), out);
      out += ')';
      return;
  }
}

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text).run(); }

std::string print_term(const Term& t) {
  std::string out;
  print_impl(t, out);
  return out;
}

}  // namespace sqk
