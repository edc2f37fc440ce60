#include "sqk/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace sqk {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula make_formula(Formula::Node n) {
  std::size_t h = static_cast<std::size_t>(n.kind) + 1;
  h = mix(h, std::hash<std::string>{}(n.name));
  h = mix(h, std::hash<std::string>{}(n.var));
  n.size = 1;
  for (const auto& k : n.kids) {
    h = mix(h, k.hash());
    n.size += k.size();
  }
  n.hash = h;
  return Formula(std::make_shared<const Formula::Node>(std::move(n)));
}

Connective Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::string& Formula::var() const { return node_->var; }
const Formula& Formula::lhs() const { return node_->kids.at(0); }
const Formula& Formula::rhs() const { return node_->kids.at(1); }
const Formula& Formula::body() const { return node_->kids.at(0); }
std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::size() const { return node_->size; }

bool Formula::is_negation() const {
  return kind() == Connective::Imp && rhs().is(Connective::False);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.hash == y.hash && x.kind == y.kind && x.name == y.name &&
         x.var == y.var && x.kids == y.kids;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.hash <=> y.hash; c != 0) return c;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.var <=> y.var; c != 0) return c;
  return std::lexicographical_compare_three_way(x.kids.begin(), x.kids.end(),
                                                y.kids.begin(), y.kids.end());
}

Formula atom(std::string name) {
  return make_formula({Connective::Atom, std::move(name), {}, {}});
}
Formula pred(std::string name, std::string arg) {
  return make_formula({Connective::Pred, std::move(name), std::move(arg), {}});
}
Formula falsum() {
  static const Formula f = make_formula({Connective::False, {}, {}, {}});
  return f;
}
Formula verum() {
  static const Formula f = make_formula({Connective::True, {}, {}, {}});
  return f;
}
Formula conj(Formula a, Formula b) {
  return make_formula({Connective::And, {}, {}, {std::move(a), std::move(b)}});
}
Formula disj(Formula a, Formula b) {
  return make_formula({Connective::Or, {}, {}, {std::move(a), std::move(b)}});
}
Formula imp(Formula a, Formula b) {
  return make_formula({Connective::Imp, {}, {}, {std::move(a), std::move(b)}});
}
Formula neg(Formula a) { return imp(std::move(a), falsum()); }
Formula forall(std::string var, Formula body) {
  return make_formula({Connective::Forall, {}, std::move(var), {std::move(body)}});
}
Formula exists(std::string var, Formula body) {
  return make_formula({Connective::Exists, {}, std::move(var), {std::move(body)}});
}
Formula squash(Formula a) {
  return make_formula({Connective::Squash, {}, {}, {std::move(a)}});
}

bool is_quantifier_free(const Formula& f) {
  switch (f.kind()) {
    case Connective::Forall:
    case Connective::Exists:
      return false;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      return is_quantifier_free(f.lhs()) && is_quantifier_free(f.rhs());
    case Connective::Squash:
      return is_quantifier_free(f.body());
    default:
      return true;
  }
}

bool is_squash_free(const Formula& f) {
  switch (f.kind()) {
    case Connective::Squash:
      return false;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      return is_squash_free(f.lhs()) && is_squash_free(f.rhs());
    case Connective::Forall:
    case Connective::Exists:
      return is_squash_free(f.body());
    default:
      return true;
  }
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f.kind()) {
    case Connective::Pred:
      if (!bound.contains(f.var())) out.insert(f.var());
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      return;
    case Connective::Squash:
      collect_free(f.body(), bound, out);
      return;
    case Connective::Forall:
    case Connective::Exists: {
      const bool fresh = bound.insert(f.var()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.var());
      return;
    }
    default:
      return;
  }
}

void collect_vars(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Connective::Pred:
      out.insert(f.var());
      return;
    case Connective::Forall:
    case Connective::Exists:
      out.insert(f.var());
      collect_vars(f.body(), out);
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      collect_vars(f.lhs(), out);
      collect_vars(f.rhs(), out);
      return;
    case Connective::Squash:
      collect_vars(f.body(), out);
      return;
    default:
      return;
  }
}

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  switch (f.kind()) {
    case Connective::And: return conj(kids[0], kids[1]);
    case Connective::Or: return disj(kids[0], kids[1]);
    case Connective::Imp: return imp(kids[0], kids[1]);
    case Connective::Squash: return squash(kids[0]);
    case Connective::Forall: return forall(f.var(), kids[0]);
    case Connective::Exists: return exists(f.var(), kids[0]);
    default: return f;
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

Formula subst_var(const Formula& f, const std::string& var, const std::string& by) {
  switch (f.kind()) {
    case Connective::Pred:
      return f.var() == var ? pred(f.name(), by) : f;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      return rebuild(f, {subst_var(f.lhs(), var, by), subst_var(f.rhs(), var, by)});
    case Connective::Squash:
      return squash(subst_var(f.body(), var, by));
    case Connective::Forall:
    case Connective::Exists: {
      if (f.var() == var) return f;
      if (!free_vars(f.body()).contains(var)) return f;
      if (f.var() != by) return rebuild(f, {subst_var(f.body(), var, by)});
      std::set<std::string> used;
      collect_vars(f.body(), used);
      used.insert(var);
      used.insert(by);
      std::string fresh = f.var();
      while (used.contains(fresh)) fresh += '\'';
      const Formula renamed = subst_var(f.body(), f.var(), fresh);
      const Formula body = subst_var(renamed, var, by);
      return f.is(Connective::Forall) ? forall(fresh, body) : exists(fresh, body);
    }
    default:
      return f;
  }
}

namespace {

// Bound variables are compared by binder depth; free ones by name.
using Scope = std::vector<std::pair<std::string, std::string>>;

bool vars_match(const std::string& a, const std::string& b, const Scope& scope) {
  for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
    const bool ha = it->first == a;
    const bool hb = it->second == b;
    if (ha || hb) return ha && hb;
  }
  return a == b;
}

bool alpha_equal_in(const Formula& a, const Formula& b, Scope& scope) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Connective::Atom:
      return a.name() == b.name();
    case Connective::Pred:
      return a.name() == b.name() && vars_match(a.var(), b.var(), scope);
    case Connective::False:
    case Connective::True:
      return true;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      return alpha_equal_in(a.lhs(), b.lhs(), scope) &&
             alpha_equal_in(a.rhs(), b.rhs(), scope);
    case Connective::Squash:
      return alpha_equal_in(a.body(), b.body(), scope);
    case Connective::Forall:
    case Connective::Exists: {
      scope.emplace_back(a.var(), b.var());
      const bool ok = alpha_equal_in(a.body(), b.body(), scope);
      scope.pop_back();
      return ok;
    }
  }
  return false;
}

void collect_names(const Formula& f, Connective which, std::set<std::string>& out) {
  if (f.kind() == which) out.insert(f.name());
  switch (f.kind()) {
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      collect_names(f.lhs(), which, out);
      collect_names(f.rhs(), which, out);
      return;
    case Connective::Squash:
    case Connective::Forall:
    case Connective::Exists:
      collect_names(f.body(), which, out);
      return;
    default:
      return;
  }
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  Scope scope;
  return alpha_equal_in(a, b, scope);
}

std::set<std::string> atom_names(const Formula& f) {
  std::set<std::string> out;
  collect_names(f, Connective::Atom, out);
  return out;
}

std::set<std::string> predicate_names(const Formula& f) {
  std::set<std::string> out;
  collect_names(f, Connective::Pred, out);
  return out;
}

int depth(const Formula& f) {
  switch (f.kind()) {
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
    case Connective::Squash:
    case Connective::Forall:
    case Connective::Exists:
      return 1 + depth(f.body());
    default:
      return 0;
  }
}

}  // namespace sqk
