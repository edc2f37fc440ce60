#include "sqk/proofkernel.hpp"

#include <array>
#include <map>
#include <set>
#include <sstream>

#include "sexp.hpp"
#include "sqk/syntax.hpp"

namespace sqk {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 18> kRuleNames{{
    {Rule::Hyp, "Hyp"},
    {Rule::ImpIntro, "ImpIntro"},
    {Rule::ImpElim, "ImpElim"},
    {Rule::AndIntro, "AndIntro"},
    {Rule::AndElimL, "AndElimL"},
    {Rule::AndElimR, "AndElimR"},
    {Rule::OrIntroL, "OrIntroL"},
    {Rule::OrIntroR, "OrIntroR"},
    {Rule::OrElim, "OrElim"},
    {Rule::FalseElim, "FalseElim"},
    {Rule::TrueIntro, "TrueIntro"},
    {Rule::ForallIntro, "ForallIntro"},
    {Rule::ForallElim, "ForallElim"},
    {Rule::ExistsIntro, "ExistsIntro"},
    {Rule::ExistsElim, "ExistsElim"},
    {Rule::SquashIntro, "SquashIntro"},
    {Rule::SquashElim, "SquashElim"},
    {Rule::ClassicalIntro, "ClassicalIntro"},
}};

}  // namespace

std::string_view rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& [rule, n] : kRuleNames)
    if (n == name) return rule;
  return std::nullopt;
}

namespace {

std::string render_path(const std::vector<std::size_t>& path) {
  std::string s = "root";
  for (std::size_t i : path) s += "/" + std::to_string(i);
  return s;
}

}  // namespace

CheckError::CheckError(std::vector<std::size_t> path, Rule rule, const std::string& what)
    : std::runtime_error(render_path(path) + " (" + std::string(rule_name(rule)) + "): " + what),
      path_(std::move(path)),
      rule_(rule) {}

std::string CheckError::path_string() const { return render_path(path_); }

namespace {

using Context = std::map<std::string, Formula>;

class Checker {
 public:
  Term check(const ProofNode& p) { return node(p); }

 private:
  [[noreturn]] void fail(const ProofNode& p, const std::string& msg) const {
    throw CheckError(path_, p.rule, msg);
  }

  Context context(const ProofNode& p) const {
    Context ctx;
    for (const auto& h : p.sequent.hyps)
      if (!ctx.emplace(h.label, h.formula).second)
        fail(p, "duplicate hypothesis label '" + h.label + "'");
    return ctx;
  }

  static bool same_context(const Context& a, const Context& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [label, f] : a) {
      auto it = b.find(label);
      if (it == b.end() || !alpha_equal(f, it->second)) return false;
    }
    return true;
  }

  void expect_premises(const ProofNode& p, std::size_t n) const {
    if (p.premises.size() != n)
      fail(p, "expected " + std::to_string(n) + " premise(s), got " +
                  std::to_string(p.premises.size()));
  }

  void expect_labels(const ProofNode& p, std::size_t n) const {
    if (p.labels.size() != n)
      fail(p, "expected " + std::to_string(n) + " label parameter(s), got " +
                  std::to_string(p.labels.size()));
  }

  const std::string& need_eigen(const ProofNode& p) const {
    if (!p.eigen || !is_lident(*p.eigen)) fail(p, "missing or malformed eigen parameter");
    return *p.eigen;
  }

  const std::string& need_witness(const ProofNode& p) const {
    if (!p.witness || !is_lident(*p.witness)) fail(p, "missing or malformed witness parameter");
    return *p.witness;
  }

  // Premise i must have exactly the conclusion's hypotheses.
  void same_hyps(const ProofNode& p, const Context& ctx, std::size_t i) const {
    if (!same_context(context_at(p, i), ctx))
      fail(p, "premise " + std::to_string(i) + " changes the hypotheses");
  }

  // Premise i must add exactly one fresh labelled hypothesis.
  void extended_hyps(const ProofNode& p, const Context& ctx, std::size_t i,
                     const std::string& label, const Formula& f) const {
    if (ctx.contains(label)) fail(p, "label '" + label + "' is not fresh");
    Context want = ctx;
    want.emplace(label, f);
    if (!same_context(context_at(p, i), want))
      fail(p, "premise " + std::to_string(i) + " must add exactly " + label + ": " +
                  print_formula(f) + " to the hypotheses");
  }

  Context context_at(const ProofNode& p, std::size_t i) const {
    Context ctx;
    for (const auto& h : p.premises[i].sequent.hyps) ctx.emplace(h.label, h.formula);
    return ctx;
  }

  void goal_is(const ProofNode& p, std::size_t i, const Formula& want) const {
    if (!alpha_equal(p.premises[i].sequent.goal, want))
      fail(p, "premise " + std::to_string(i) + " must prove " + print_formula(want) +
                  ", proves " + print_formula(p.premises[i].sequent.goal));
  }

  Term sub(const ProofNode& p, std::size_t i) {
    path_.push_back(i);
    Term t = node(p.premises[i]);
    path_.pop_back();
    return t;
  }

  void eigen_fresh(const ProofNode& p, const Context& ctx, const std::string& a,
                   std::initializer_list<const Formula*> also) const {
    for (const auto& [label, f] : ctx)
      if (free_vars(f).contains(a))
        fail(p, "eigenvariable '" + a + "' occurs free in hypothesis " + label);
    for (const Formula* f : also)
      if (free_vars(*f).contains(a)) fail(p, "eigenvariable '" + a + "' occurs free in the goal");
  }

  Term node(const ProofNode& p) {
    const Context ctx = context(p);
    const Formula& goal = p.sequent.goal;
    Term t = rule(p, ctx, goal);
    return goal.is(Connective::Squash) ? star() : t;
  }

  Term rule(const ProofNode& p, const Context& ctx, const Formula& goal) {
    switch (p.rule) {
      case Rule::Hyp: {
        expect_premises(p, 0);
        expect_labels(p, 1);
        auto it = ctx.find(p.labels[0]);
        if (it == ctx.end()) fail(p, "unknown label '" + p.labels[0] + "'");
        if (!alpha_equal(it->second, goal))
          fail(p, "hypothesis " + p.labels[0] + " is " + print_formula(it->second) + ", not " +
                      print_formula(goal));
        return var(p.labels[0]);
      }
      case Rule::ImpIntro: {
        expect_premises(p, 1);
        expect_labels(p, 1);
        if (!goal.is(Connective::Imp)) fail(p, "goal is not an implication");
        extended_hyps(p, ctx, 0, p.labels[0], goal.lhs());
        goal_is(p, 0, goal.rhs());
        return lam(p.labels[0], sub(p, 0));
      }
      case Rule::ImpElim: {
        expect_premises(p, 2);
        same_hyps(p, ctx, 0);
        same_hyps(p, ctx, 1);
        goal_is(p, 0, imp(p.premises[1].sequent.goal, goal));
        return ap(sub(p, 0), sub(p, 1));
      }
      case Rule::AndIntro: {
        expect_premises(p, 2);
        if (!goal.is(Connective::And)) fail(p, "goal is not a conjunction");
        same_hyps(p, ctx, 0);
        same_hyps(p, ctx, 1);
        goal_is(p, 0, goal.lhs());
        goal_is(p, 1, goal.rhs());
        return pair(sub(p, 0), sub(p, 1));
      }
      case Rule::AndElimL:
      case Rule::AndElimR: {
        expect_premises(p, 1);
        same_hyps(p, ctx, 0);
        const Formula& c = p.premises[0].sequent.goal;
        const bool left = p.rule == Rule::AndElimL;
        if (!c.is(Connective::And) || !alpha_equal(left ? c.lhs() : c.rhs(), goal))
          fail(p, "premise must prove a conjunction with " + print_formula(goal) + " on the " +
                      (left ? "left" : "right"));
        return left ? fst(sub(p, 0)) : snd(sub(p, 0));
      }
      case Rule::OrIntroL:
      case Rule::OrIntroR: {
        expect_premises(p, 1);
        const bool left = p.rule == Rule::OrIntroL;
        if (p.side && *p.side != (left ? "left" : "right")) fail(p, "side parameter disagrees");
        if (!goal.is(Connective::Or)) fail(p, "goal is not a disjunction");
        same_hyps(p, ctx, 0);
        goal_is(p, 0, left ? goal.lhs() : goal.rhs());
        return left ? inl(sub(p, 0)) : inr(sub(p, 0));
      }
      case Rule::OrElim: {
        expect_premises(p, 3);
        expect_labels(p, 2);
        same_hyps(p, ctx, 0);
        const Formula& d = p.premises[0].sequent.goal;
        if (!d.is(Connective::Or)) fail(p, "first premise must prove a disjunction");
        extended_hyps(p, ctx, 1, p.labels[0], d.lhs());
        extended_hyps(p, ctx, 2, p.labels[1], d.rhs());
        goal_is(p, 1, goal);
        goal_is(p, 2, goal);
        return case_of(sub(p, 0), p.labels[0], sub(p, 1), p.labels[1], sub(p, 2));
      }
      case Rule::FalseElim: {
        expect_premises(p, 1);
        same_hyps(p, ctx, 0);
        goal_is(p, 0, falsum());
        return any(sub(p, 0));
      }
      case Rule::TrueIntro: {
        expect_premises(p, 0);
        if (!goal.is(Connective::True)) fail(p, "goal is not True");
        return star();
      }
      case Rule::ForallIntro: {
        expect_premises(p, 1);
        if (!goal.is(Connective::Forall)) fail(p, "goal is not a universal");
        const std::string& a = need_eigen(p);
        eigen_fresh(p, ctx, a, {&goal});
        same_hyps(p, ctx, 0);
        goal_is(p, 0, subst_var(goal.body(), goal.var(), a));
        return lam(a, sub(p, 0));
      }
      case Rule::ForallElim: {
        expect_premises(p, 1);
        const std::string& t = need_witness(p);
        same_hyps(p, ctx, 0);
        const Formula& u = p.premises[0].sequent.goal;
        if (!u.is(Connective::Forall)) fail(p, "premise must prove a universal");
        if (!alpha_equal(subst_var(u.body(), u.var(), t), goal))
          fail(p, "goal is not the instance of " + print_formula(u) + " at " + t);
        return ap(sub(p, 0), var(t));
      }
      case Rule::ExistsIntro: {
        expect_premises(p, 1);
        if (!goal.is(Connective::Exists)) fail(p, "goal is not an existential");
        const std::string& t = need_witness(p);
        same_hyps(p, ctx, 0);
        goal_is(p, 0, subst_var(goal.body(), goal.var(), t));
        return pair(var(t), sub(p, 0));
      }
      case Rule::ExistsElim: {
        expect_premises(p, 2);
        expect_labels(p, 1);
        const std::string& a = need_eigen(p);
        same_hyps(p, ctx, 0);
        const Formula& e = p.premises[0].sequent.goal;
        if (!e.is(Connective::Exists)) fail(p, "first premise must prove an existential");
        eigen_fresh(p, ctx, a, {&goal, &e});
        extended_hyps(p, ctx, 1, p.labels[0], subst_var(e.body(), e.var(), a));
        goal_is(p, 1, goal);
        Term witness = sub(p, 0);
        Term body = sub(p, 1);
        return ap(ap(lam(a, lam(p.labels[0], body)), fst(witness)), snd(witness));
      }
      case Rule::SquashIntro: {
        expect_premises(p, 1);
        if (!goal.is(Connective::Squash)) fail(p, "goal is not squashed");
        same_hyps(p, ctx, 0);
        goal_is(p, 0, goal.body());
        sub(p, 0);
        return star();
      }
      case Rule::SquashElim: {
        expect_premises(p, 1);
        expect_labels(p, 2);
        auto it = ctx.find(p.labels[0]);
        if (it == ctx.end()) fail(p, "unknown label '" + p.labels[0] + "'");
        if (!it->second.is(Connective::Squash))
          fail(p, "hypothesis " + p.labels[0] + " is not squashed");
        if (!goal.is(Connective::Squash) && !goal.is(Connective::False))
          fail(p, "goal " + print_formula(goal) +
                      " is not squash-stable; hidden evidence cannot be unhidden here");
        extended_hyps(p, ctx, 0, p.labels[1], it->second.body());
        goal_is(p, 0, goal);
        // The unhidden evidence is virtual and never reaches the realizer.
        sub(p, 0);
        return goal.is(Connective::Squash) ? star() : any(var(p.labels[0]));
      }
      case Rule::ClassicalIntro: {
        expect_premises(p, 1);
        if (!goal.is(Connective::Squash)) fail(p, "ClassicalIntro concludes a squashed goal");
        same_hyps(p, ctx, 0);
        goal_is(p, 0, neg(neg(goal.body())));
        sub(p, 0);
        return star();
      }
    }
    fail(p, "unknown rule");
  }

  std::vector<std::size_t> path_;
};

}  // namespace

Term check_proof(const ProofNode& p) { return Checker{}.check(p); }

bool uses_rule(const ProofNode& p, Rule r) {
  if (p.rule == r) return true;
  for (const auto& q : p.premises)
    if (uses_rule(q, r)) return true;
  return false;
}

std::size_t proof_size(const ProofNode& p) {
  std::size_t n = 1;
  for (const auto& q : p.premises) n += proof_size(q);
  return n;
}

namespace {

using sexp::Sexp;

Formula formula_from(const Sexp& s) {
  if (s.is_string()) {
    try {
      return parse_formula(s.text);
    } catch (const ParseError& e) {
      throw ParseError(s.offset + 1 + e.offset(), std::string("in formula: ") + e.what());
    }
  }
  if (s.is_symbol()) {
    if (s.text == "False") return falsum();
    if (s.text == "True") return verum();
    if (is_uident(s.text)) return atom(s.text);
    throw ParseError(s.offset, "expected a formula, got '" + s.text + "'");
  }
  if (s.items.empty() || !s.items[0].is_symbol())
    throw ParseError(s.offset, "expected a formula operator");
  const std::string& op = s.items[0].text;
  auto arity = [&](std::size_t n) {
    if (s.items.size() != n + 1)
      throw ParseError(s.offset, "'" + op + "' takes " + std::to_string(n) + " argument(s)");
  };
  auto arg = [&](std::size_t i) { return formula_from(s.items[i]); };
  auto ident = [&](std::size_t i) {
    if (!s.items[i].is_symbol() || !is_lident(s.items[i].text))
      throw ParseError(s.items[i].offset, "expected an individual variable");
    return s.items[i].text;
  };
  if (op == "=>") return arity(2), imp(arg(1), arg(2));
  if (op == "/\\") return arity(2), conj(arg(1), arg(2));
  if (op == "\\/") return arity(2), disj(arg(1), arg(2));
  if (op == "~") return arity(1), neg(arg(1));
  if (op == "{}" || op == "squash") return arity(1), squash(arg(1));
  if (op == "forall") return arity(2), forall(ident(1), arg(2));
  if (op == "exists") return arity(2), exists(ident(1), arg(2));
  if (is_uident(op) && op != "False" && op != "True") return arity(1), pred(op, ident(1));
  throw ParseError(s.offset, "unknown formula operator '" + op + "'");
}

Sequent sequent_from(const Sexp& s) {
  if (!s.is_list()) throw ParseError(s.offset, "expected a sequent list");
  Sequent seq{{}, falsum()};
  std::size_t i = 0;
  std::set<std::string> seen;
  for (; i < s.items.size() && !s.items[i].is_symbol("|-"); ++i) {
    const Sexp& h = s.items[i];
    if (!h.is_list() || h.items.size() != 2 || !h.items[0].is_symbol())
      throw ParseError(h.offset, "expected a hypothesis (label formula)");
    if (!seen.insert(h.items[0].text).second)
      throw ParseError(h.offset, "duplicate label '" + h.items[0].text + "'");
    seq.hyps.push_back({h.items[0].text, formula_from(h.items[1])});
  }
  if (i == s.items.size()) throw ParseError(s.offset, "missing '|-'");
  if (i + 2 != s.items.size()) throw ParseError(s.offset, "expected exactly one goal after '|-'");
  seq.goal = formula_from(s.items[i + 1]);
  return seq;
}

ProofNode proof_from(const Sexp& s) {
  if (!s.is_list() || s.items.size() < 2 || !s.items[0].is_symbol())
    throw ParseError(s.offset, "expected (Rule (goal ...) ...)");
  auto rule = rule_from_name(s.items[0].text);
  if (!rule) throw ParseError(s.items[0].offset, "unknown rule '" + s.items[0].text + "'");
  const Sexp& g = s.items[1];
  if (!g.is_list() || g.items.size() != 2 || !g.items[0].is_symbol("goal"))
    throw ParseError(g.offset, "expected (goal sequent)");
  ProofNode p{*rule, sequent_from(g.items[1]), {}, {}, {}, {}, {}};
  for (std::size_t i = 2; i < s.items.size(); ++i) {
    const Sexp& item = s.items[i];
    if (!item.is_list() || item.items.empty() || !item.items[0].is_symbol())
      throw ParseError(item.offset, "expected a parameter or a premise");
    const std::string& head = item.items[0].text;
    if (head == "label" || head == "side" || head == "witness" || head == "eigen") {
      if (!p.premises.empty()) throw ParseError(item.offset, "parameters must precede premises");
      if (item.items.size() != 2 || item.items[1].is_list())
        throw ParseError(item.offset, "parameter takes one value");
      const std::string& value = item.items[1].text;
      if (head == "label") p.labels.push_back(value);
      else if (head == "side") p.side = value;
      else if (head == "witness") p.witness = value;
      else p.eigen = value;
    } else {
      p.premises.push_back(proof_from(item));
    }
  }
  return p;
}

void print_sequent_to(const Sequent& s, std::string& out) {
  out += '(';
  for (const auto& h : s.hyps) out += "(" + h.label + " " + sexp::quote(print_formula(h.formula)) + ") ";
  out += "|- " + sexp::quote(print_formula(s.goal)) + ")";
}

void print_proof_to(const ProofNode& p, int indent, std::string& out) {
  out += '(';
  out += rule_name(p.rule);
  out += " (goal ";
  print_sequent_to(p.sequent, out);
  out += ')';
  for (const auto& l : p.labels) out += " (label " + l + ")";
  if (p.side) out += " (side " + *p.side + ")";
  if (p.witness) out += " (witness " + *p.witness + ")";
  if (p.eigen) out += " (eigen " + *p.eigen + ")";
  for (const auto& q : p.premises) {
    out += '\n';
    out.append(static_cast<std::size_t>(indent + 2), ' ');
    print_proof_to(q, indent + 2, out);
  }
  out += ')';
}

}  // namespace

Sequent parse_sequent(std::string_view text) { return sequent_from(sexp::read(text)); }

ProofNode parse_proof(std::string_view text) { return proof_from(sexp::read(text)); }

std::string print_sequent(const Sequent& s) {
  std::string out;
  print_sequent_to(s, out);
  return out;
}

std::string print_proof(const ProofNode& p) {
  std::string out;
  print_proof_to(p, 0, out);
  return out;
}

}  // namespace sqk
