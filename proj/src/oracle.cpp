#include "sqk/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "sqk/syntax.hpp"

namespace sqk {

namespace {

std::string letter_key(const Formula& f) {
  return f.is(Connective::Pred) ? f.name() + "(" + f.var() + ")" : f.name();
}

void collect_letters(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Pred:
      out.insert(letter_key(f));
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      collect_letters(f.lhs(), out);
      collect_letters(f.rhs(), out);
      return;
    case Connective::Squash:
      collect_letters(f.body(), out);
      return;
    case Connective::Forall:
    case Connective::Exists:
      throw std::invalid_argument("propositional formula expected, got a quantifier");
    default:
      return;
  }
}

}  // namespace

std::set<std::string> letters(const Formula& f) {
  std::set<std::string> out;
  collect_letters(f, out);
  return out;
}

bool evaluate(const Formula& f, const Valuation& v) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Pred: {
      auto it = v.find(letter_key(f));
      if (it == v.end()) throw std::invalid_argument("valuation misses " + letter_key(f));
      return it->second;
    }
    case Connective::False:
      return false;
    case Connective::True:
      return true;
    case Connective::And:
      return evaluate(f.lhs(), v) && evaluate(f.rhs(), v);
    case Connective::Or:
      return evaluate(f.lhs(), v) || evaluate(f.rhs(), v);
    case Connective::Imp:
      return !evaluate(f.lhs(), v) || evaluate(f.rhs(), v);
    case Connective::Squash:
      return evaluate(f.body(), v);
    default:
      throw std::invalid_argument("propositional formula expected, got a quantifier");
  }
}

std::optional<Valuation> falsifying_valuation(const Formula& f) {
  const auto ls = letters(f);
  const std::vector<std::string> names(ls.begin(), ls.end());
  if (names.size() > 20) throw std::invalid_argument("too many letters for a truth table");
  Valuation v;
  // First letter is the most significant bit; all-true comes first.
  for (std::size_t mask = 0; mask < (std::size_t{1} << names.size()); ++mask) {
    for (std::size_t i = 0; i < names.size(); ++i)
      v[names[i]] = !((mask >> (names.size() - 1 - i)) & 1U);
    if (!evaluate(f, v)) return v;
  }
  return std::nullopt;
}

bool truth_table_valid(const Formula& f) { return !falsifying_valuation(f).has_value(); }

namespace {

bool holds_in(const Formula& f, const FiniteModel& m, std::map<std::string, int>& env) {
  switch (f.kind()) {
    case Connective::Atom:
      return m.atoms.at(f.name());
    case Connective::Pred:
      return m.predicates.at(f.name()).at(static_cast<std::size_t>(env.at(f.var())));
    case Connective::False:
      return false;
    case Connective::True:
      return true;
    case Connective::And:
      return holds_in(f.lhs(), m, env) && holds_in(f.rhs(), m, env);
    case Connective::Or:
      return holds_in(f.lhs(), m, env) || holds_in(f.rhs(), m, env);
    case Connective::Imp:
      return !holds_in(f.lhs(), m, env) || holds_in(f.rhs(), m, env);
    case Connective::Squash:
      return holds_in(f.body(), m, env);
    case Connective::Forall:
    case Connective::Exists: {
      const bool universal = f.is(Connective::Forall);
      auto saved = env.find(f.var()) != env.end() ? std::optional<int>(env[f.var()]) : std::nullopt;
      bool result = universal;
      for (int d = 0; d < m.domain_size; ++d) {
        env[f.var()] = d;
        if (holds_in(f.body(), m, env) != universal) {
          result = !universal;
          break;
        }
      }
      if (saved) env[f.var()] = *saved;
      else env.erase(f.var());
      return result;
    }
  }
  return false;
}

}  // namespace

bool holds(const Formula& f, const FiniteModel& m) {
  std::map<std::string, int> env;
  return holds_in(f, m, env);
}

std::optional<FiniteModel> finite_countermodel(const Formula& f, int max_domain) {
  if (max_domain < 1) throw std::invalid_argument("max_domain must be positive");
  if (!free_vars(f).empty()) throw std::invalid_argument("formula must be closed");
  const auto preds = predicate_names(f);
  const auto atoms = atom_names(f);
  for (int n = 1; n <= max_domain; ++n) {
    const std::size_t bits = preds.size() * static_cast<std::size_t>(n) + atoms.size();
    if (bits > 24) throw std::invalid_argument("finite model space too large");
    for (std::size_t mask = 0; mask < (std::size_t{1} << bits); ++mask) {
      FiniteModel m;
      m.domain_size = n;
      std::size_t bit = 0;
      for (const auto& p : preds) {
        auto& table = m.predicates[p];
        for (int d = 0; d < n; ++d) table.push_back((mask >> bit++) & 1U);
      }
      for (const auto& a : atoms) m.atoms[a] = (mask >> bit++) & 1U;
      if (!holds(f, m)) return m;
    }
  }
  return std::nullopt;
}

bool finite_model_valid(const Formula& f, int max_domain) {
  return !finite_countermodel(f, max_domain).has_value();
}

FiniteType FiniteType::sum(FiniteType a, FiniteType b) {
  return {Kind::Sum, std::make_shared<const FiniteType>(std::move(a)),
          std::make_shared<const FiniteType>(std::move(b))};
}
FiniteType FiniteType::prod(FiniteType a, FiniteType b) {
  return {Kind::Prod, std::make_shared<const FiniteType>(std::move(a)),
          std::make_shared<const FiniteType>(std::move(b))};
}
FiniteType FiniteType::fun(FiniteType a, FiniteType b) {
  return {Kind::Fun, std::make_shared<const FiniteType>(std::move(a)),
          std::make_shared<const FiniteType>(std::move(b))};
}

bool FiniteType::inhabited() const {
  switch (kind) {
    case Kind::Void: return false;
    case Kind::Unit: return true;
    case Kind::Sum: return left->inhabited() || right->inhabited();
    case Kind::Prod: return left->inhabited() && right->inhabited();
    case Kind::Fun: return !left->inhabited() || right->inhabited();
  }
  return false;
}

bool operator==(const FiniteType& a, const FiniteType& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == FiniteType::Kind::Void || a.kind == FiniteType::Kind::Unit) return true;
  return *a.left == *b.left && *a.right == *b.right;
}

namespace {

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : text_(text) {}

  FiniteType run() {
    FiniteType t = sum();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected trailing input in type");
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }
  FiniteType sum() {
    FiniteType t = prod();
    while (accept("+")) t = FiniteType::sum(t, prod());
    return t;
  }
  FiniteType prod() {
    FiniteType t = base();
    while (accept("*")) t = FiniteType::prod(t, base());
    return t;
  }
  FiniteType base() {
    if (accept("Void")) return FiniteType::void_type();
    if (accept("Unit")) return FiniteType::unit();
    if (accept("(")) {
      FiniteType t = sum();
      if (!accept(")")) throw ParseError(pos_, "expected ')' in type");
      return t;
    }
    throw ParseError(pos_, "expected Void, Unit or '('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_type(const FiniteType& t, int prec, std::string& out) {
  using K = FiniteType::Kind;
  auto bin = [&](int own, const char* op) {
    if (prec > own) out += '(';
    print_type(*t.left, own, out);
    out += op;
    print_type(*t.right, own + 1, out);
    if (prec > own) out += ')';
  };
  switch (t.kind) {
    case K::Void: out += "Void"; return;
    case K::Unit: out += "Unit"; return;
    case K::Sum: bin(1, "+"); return;
    case K::Prod: bin(2, "*"); return;
    case K::Fun: bin(0, "->"); return;
  }
}

}  // namespace

FiniteType parse_finite_type(std::string_view text) { return TypeParser(text).run(); }

std::string print_finite_type(const FiniteType& t) {
  std::string out;
  print_type(t, 0, out);
  return out;
}

EvidenceModel parse_evidence_model(std::string_view text) {
  EvidenceModel m;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = text.substr(start, comma - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError(start, "expected NAME=TYPE");
    std::string name(item.substr(0, eq));
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.erase(0, 1);
    if (name.empty()) throw ParseError(start, "empty atom name");
    try {
      m[name] = parse_finite_type(item.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError(start + eq + 1 + e.offset(), e.what());
    }
    start = comma + 1;
  }
  return m;
}

FiniteType evidence_type(const Formula& f, const EvidenceModel& m) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Pred: {
      auto it = m.find(letter_key(f));
      if (it == m.end()) throw std::invalid_argument("evidence model misses " + letter_key(f));
      return it->second;
    }
    case Connective::False:
      return FiniteType::void_type();
    case Connective::True:
      return FiniteType::unit();
    case Connective::And:
      return FiniteType::prod(evidence_type(f.lhs(), m), evidence_type(f.rhs(), m));
    case Connective::Or:
      return FiniteType::sum(evidence_type(f.lhs(), m), evidence_type(f.rhs(), m));
    case Connective::Imp:
      return FiniteType::fun(evidence_type(f.lhs(), m), evidence_type(f.rhs(), m));
    case Connective::Squash:
      return evidence_type(f.body(), m).inhabited() ? FiniteType::unit()
                                                    : FiniteType::void_type();
    default:
      throw std::invalid_argument("propositional formula expected, got a quantifier");
  }
}

namespace {

int term_depth(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Star:
      return 1;
    case TermKind::Ap:
    case TermKind::Pair:
      return 1 + std::max(term_depth(t.child(0)), term_depth(t.child(1)));
    case TermKind::Case:
      return 1 + std::max({term_depth(t.child(0)), term_depth(t.child(1)),
                           term_depth(t.child(2))});
    default:
      return 1 + term_depth(t.child(0));
  }
}

class Inhabitant {
 public:
  using K = FiniteType::Kind;

  std::optional<Term> search(const FiniteType& goal, int depth) {
    if (depth < 1) return std::nullopt;
    for (auto it = ctx_.rbegin(); it != ctx_.rend(); ++it)
      if (it->second == goal) return var(it->first);
    switch (goal.kind) {
      case K::Unit:
        return star();
      case K::Prod: {
        auto a = search(*goal.left, depth - 1);
        if (!a) break;
        auto b = search(*goal.right, depth - 1);
        if (!b) break;
        return pair(*a, *b);
      }
      case K::Sum:
        if (auto a = search(*goal.left, depth - 1)) return inl(*a);
        if (auto b = search(*goal.right, depth - 1)) return inr(*b);
        break;
      case K::Fun: {
        const std::string x = fresh();
        ctx_.emplace_back(x, *goal.left);
        auto body = search(*goal.right, depth - 1);
        ctx_.pop_back();
        if (body) return lam(x, *body);
        break;
      }
      case K::Void:
        break;
    }
    // Ex falso from an empty hypothesis.
    for (auto it = ctx_.rbegin(); it != ctx_.rend(); ++it) {
      if (it->second.inhabited()) continue;
      Term r = refute(var(it->first), it->second);
      Term t = goal.kind == K::Void ? r : any(r);
      if (term_depth(t) <= depth) return t;
    }
    return std::nullopt;
  }

 private:
  std::string fresh() { return "x" + std::to_string(++counter_); }

  // Canonical closed element of an inhabited type.
  Term element(const FiniteType& t) {
    switch (t.kind) {
      case K::Unit: return star();
      case K::Prod: return pair(element(*t.left), element(*t.right));
      case K::Sum: return t.left->inhabited() ? inl(element(*t.left)) : inr(element(*t.right));
      case K::Fun: {
        const std::string x = fresh();
        if (*t.left == *t.right) return lam(x, var(x));
        if (t.right->inhabited()) return lam(x, element(*t.right));
        return lam(x, any(refute(var(x), *t.left)));
      }
      case K::Void: break;
    }
    throw std::logic_error("element of an empty type");
  }

  // Evidence for False from a term of empty type.
  Term refute(const Term& t, const FiniteType& empty) {
    switch (empty.kind) {
      case K::Void: return t;
      case K::Prod:
        return empty.left->inhabited() ? refute(snd(t), *empty.right)
                                       : refute(fst(t), *empty.left);
      case K::Sum: {
        const std::string y = fresh(), z = fresh();
        return case_of(t, y, refute(var(y), *empty.left), z, refute(var(z), *empty.right));
      }
      case K::Fun: return refute(ap(t, element(*empty.left)), *empty.right);
      case K::Unit: break;
    }
    throw std::logic_error("refute of an inhabited type");
  }

  std::vector<std::pair<std::string, FiniteType>> ctx_;
  int counter_ = 0;
};

}  // namespace

std::optional<Term> inhabitation_search(const Formula& f, const EvidenceModel& m, int depth) {
  const FiniteType t = evidence_type(f, m);
  Inhabitant search;
  return search.search(t, depth);
}

namespace {

struct Frame {
  const KripkeModel& k;
  bool eval(int w, const Formula& f) const {
    switch (f.kind()) {
      case Connective::Atom:
      case Connective::Pred:
        return k.forcing.at(letter_key(f)).at(static_cast<std::size_t>(w));
      case Connective::False:
        return false;
      case Connective::True:
        return true;
      case Connective::And:
        return eval(w, f.lhs()) && eval(w, f.rhs());
      case Connective::Or:
        return eval(w, f.lhs()) || eval(w, f.rhs());
      case Connective::Imp:
        for (int v = 0; v < k.worlds; ++v)
          if (k.leq[w][v] && eval(v, f.lhs()) && !eval(v, f.rhs())) return false;
        return true;
      default:
        throw std::invalid_argument("Kripke forcing needs a propositional squash-free formula");
    }
  }
};

// Rooted partial orders on n worlds, numbered so that i <= j implies i < j
// numerically unless i == j.
std::vector<std::vector<std::vector<bool>>> rooted_orders(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::vector<std::vector<bool>>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) leq[i][i] = true;
    for (int j = 0; j < n; ++j) leq[0][j] = true;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if ((mask >> b) & 1U) leq[pairs[b].first][pairs[b].second] = true;
    bool transitive = true;
    for (int a = 0; a < n && transitive; ++a)
      for (int b = 0; b < n && transitive; ++b)
        for (int c = 0; c < n && transitive; ++c)
          if (leq[a][b] && leq[b][c] && !leq[a][c]) transitive = false;
    if (transitive) out.push_back(std::move(leq));
  }
  return out;
}

std::vector<std::vector<bool>> up_sets(const std::vector<std::vector<bool>>& leq) {
  const int n = static_cast<int>(leq.size());
  std::vector<std::vector<bool>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<bool> s(n);
    for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1U;
    bool closed = true;
    for (int i = 0; i < n && closed; ++i)
      for (int j = 0; j < n && closed; ++j)
        if (s[i] && leq[i][j] && !s[j]) closed = false;
    if (closed) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

bool forces(const KripkeModel& k, int world, const Formula& f) { return Frame{k}.eval(world, f); }

std::optional<KripkeModel> kripke_refutes(const Formula& f, int max_worlds) {
  if (!is_squash_free(f)) throw std::invalid_argument("kripke_refutes: input must be squash-free");
  const auto ls = letters(f);
  const std::vector<std::string> names(ls.begin(), ls.end());
  for (int n = 1; n <= max_worlds; ++n) {
    for (auto& leq : rooted_orders(n)) {
      const auto ups = up_sets(leq);
      KripkeModel k;
      k.worlds = n;
      k.leq = leq;
      // Odometer over one up-set per letter.
      std::vector<std::size_t> pick(names.size(), 0);
      while (true) {
        for (std::size_t i = 0; i < names.size(); ++i) k.forcing[names[i]] = ups[pick[i]];
        if (!forces(k, 0, f)) return k;
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == ups.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
  }
  return std::nullopt;
}

std::string describe(const KripkeModel& k) {
  std::ostringstream os;
  os << k.worlds << " world" << (k.worlds == 1 ? "" : "s") << "; order:";
  bool any_edge = false;
  for (int i = 0; i < k.worlds; ++i)
    for (int j = 0; j < k.worlds; ++j)
      if (i != j && k.leq[i][j]) {
        os << ' ' << 'w' << i << "<=w" << j;
        any_edge = true;
      }
  if (!any_edge) os << " (none)";
  for (int w = 0; w < k.worlds; ++w) {
    os << "; w" << w << " forces {";
    bool first = true;
    for (const auto& [name, row] : k.forcing)
      if (row[w]) {
        os << (first ? "" : ",") << name;
        first = false;
      }
    os << '}';
  }
  return os.str();
}

std::string describe(const FiniteModel& m) {
  std::ostringstream os;
  os << "domain size " << m.domain_size;
  for (const auto& [name, table] : m.predicates) {
    os << "; " << name << " = {";
    bool first = true;
    for (int d = 0; d < m.domain_size; ++d)
      if (table[d]) {
        os << (first ? "" : ",") << d;
        first = false;
      }
    os << '}';
  }
  for (const auto& [name, value] : m.atoms) os << "; " << name << '=' << (value ? "true" : "false");
  return os.str();
}

std::string describe(const Valuation& v) {
  std::string out;
  for (const auto& [name, value] : v) {
    if (!out.empty()) out += ' ';
    out += name + '=' + (value ? "true" : "false");
  }
  return out;
}

}  // namespace sqk
