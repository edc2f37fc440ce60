#ifndef SQK_EVIDENCE_HPP
#define SQK_EVIDENCE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqk/formula.hpp"

namespace sqk {

enum class TermKind : std::uint8_t { Var, Lam, Ap, Pair, Fst, Snd, Inl, Inr, Case, Star, Any };

// Untyped realizer terms: lambda calculus with pairs, injections, unit (star)
// and the ex-falso operator any(t), which never reduces.
class Term {
 public:
  struct Node;

  Term() = delete;

  TermKind kind() const;
  bool is(TermKind k) const { return kind() == k; }

  // Var name, Lam binder, Case left binder.
  const std::string& name() const;
  // Case right binder.
  const std::string& name2() const;

  // Children in source order: Lam body; Ap fun, arg; Pair left, right;
  // Case scrutinee, left body, right body; unary constructors their operand.
  const Term& child(std::size_t i) const;

  std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  friend Term make_term(Node n);

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  TermKind kind;
  std::string name;
  std::string name2;
  std::vector<Term> kids;
  std::size_t size = 1;
};

Term var(std::string name);
Term lam(std::string binder, Term body);
Term ap(Term fun, Term arg);
Term pair(Term left, Term right);
Term fst(Term t);
Term snd(Term t);
Term inl(Term t);
Term inr(Term t);
Term case_of(Term scrutinee, std::string left_binder, Term left, std::string right_binder,
             Term right);
Term star();
Term any(Term t);

std::set<std::string> free_vars(const Term& t);

// Capture-avoiding body[replacement/name]. Binders that would capture a free
// variable of `replacement` are renamed by appending primes.
Term substitute(const Term& body, const std::string& name, const Term& replacement);

// Reduced holds the result of contracting exactly one leftmost-outermost
// redex; an empty optional means the term is normal.
using ReductionOutcome = std::optional<Term>;

ReductionOutcome reduce_step(const Term& t);

// Iterates reduce_step. Returns std::nullopt (fuel exhausted) when the term
// is still reducible after `fuel` contractions.
std::optional<Term> normalize(const Term& t, std::size_t fuel);

bool alpha_eq(const Term& a, const Term& b);

using Hypotheses = std::vector<std::pair<std::string, Formula>>;

// Checks that t is evidence for the propositional formula f, reading
// hypotheses as typed free variables (later entries shadow earlier ones).
// star is accepted for True and for any squash {G}; any(t) for every formula
// provided t is evidence for False.
bool check_evidence(const Term& t, const Formula& f, std::span<const Hypotheses::value_type> hyps = {});

// Surface syntax: lam(x.t) ap(t;t) pair(t;t) fst(t) snd(t) inl(t) inr(t)
// case(t; x.t; y.t) star any(t); application also as juxtaposition t1(t2).
Term parse_term(std::string_view text);
std::string print_term(const Term& t);

}  // namespace sqk

#endif  // SQK_EVIDENCE_HPP
