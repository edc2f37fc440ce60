#ifndef SQK_ORACLE_HPP
#define SQK_ORACLE_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sqk/evidence.hpp"
#include "sqk/formula.hpp"

namespace sqk {

// Brute-force semantic oracles. None of them share code with the prover or
// the kernel; they are the independent side of every cross-check.

// Propositional letters of a quantifier-free formula: atom names, and
// predicate applications keyed as "P(x)".
std::set<std::string> letters(const Formula& f);

using Valuation = std::map<std::string, bool>;

// Classical evaluation; squash is transparent. Throws std::invalid_argument
// on quantifiers or letters missing from v.
bool evaluate(const Formula& f, const Valuation& v);

std::optional<Valuation> falsifying_valuation(const Formula& f);
bool truth_table_valid(const Formula& f);

struct FiniteModel {
  int domain_size = 1;
  std::map<std::string, std::vector<bool>> predicates;
  std::map<std::string, bool> atoms;
};

// f must be closed; squash is erased.
bool holds(const Formula& f, const FiniteModel& m);
std::optional<FiniteModel> finite_countermodel(const Formula& f, int max_domain);
bool finite_model_valid(const Formula& f, int max_domain);

// Finite evidence types. Models use Void, Unit, sums and products; function
// spaces only arise as the meaning of implications.
struct FiniteType {
  enum class Kind { Void, Unit, Sum, Prod, Fun };

  Kind kind = Kind::Void;
  std::shared_ptr<const FiniteType> left, right;

  static FiniteType void_type() { return {}; }
  static FiniteType unit() { return {Kind::Unit, nullptr, nullptr}; }
  static FiniteType sum(FiniteType a, FiniteType b);
  static FiniteType prod(FiniteType a, FiniteType b);
  static FiniteType fun(FiniteType a, FiniteType b);

  bool inhabited() const;
  friend bool operator==(const FiniteType& a, const FiniteType& b);
};

// "Void" | "Unit" | t "+" t | t "*" t | "(" t ")"; * binds tighter than +.
FiniteType parse_finite_type(std::string_view text);
std::string print_finite_type(const FiniteType& t);

using EvidenceModel = std::map<std::string, FiniteType>;

// "P=Unit,Q=Void+Unit"
EvidenceModel parse_evidence_model(std::string_view text);

// Meaning of f under m: And is product, Or is sum, Imp is the function
// space, False is Void, True is Unit, {G} is Unit if G is inhabited and Void
// otherwise.
FiniteType evidence_type(const Formula& f, const EvidenceModel& m);

// Type-directed search for a closed inhabitant of evidence_type(f, m) whose
// term depth is at most `depth`.
std::optional<Term> inhabitation_search(const Formula& f, const EvidenceModel& m, int depth);

struct KripkeModel {
  int worlds = 1;
  // leq[i][j]: world j is accessible from world i (reflexive, transitive).
  std::vector<std::vector<bool>> leq;
  // Monotone along leq.
  std::map<std::string, std::vector<bool>> forcing;
};

// f propositional and squash-free.
bool forces(const KripkeModel& k, int world, const Formula& f);

// Smallest rooted model (root = world 0) with at most max_worlds worlds whose
// root does not force f.
std::optional<KripkeModel> kripke_refutes(const Formula& f, int max_worlds);

std::string describe(const KripkeModel& k);
std::string describe(const FiniteModel& m);
std::string describe(const Valuation& v);

}  // namespace sqk

#endif  // SQK_ORACLE_HPP
