#ifndef SQK_PROVER_HPP
#define SQK_PROVER_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqk/formula.hpp"
#include "sqk/proofkernel.hpp"

namespace sqk {

// Intuitionistic propositional proof search (Dyckhoff's G4ip). The sequent
// derivation is elaborated into a natural-deduction proof for check_proof.
// Predicate applications are treated as propositional letters.
// nullopt means not provable. Throws std::invalid_argument on quantified or
// squashed input.
std::optional<ProofNode> g4ip_prove(const Formula& f);

// Decision only, without building a proof object.
bool g4ip_provable(const Formula& f);

// For a tautology g: ClassicalIntro over a G4ip proof of ~~g, concluding {g}.
// nullopt when g is not a tautology.
std::optional<ProofNode> classical_pipeline(const Formula& g);

// True iff the kernel accepts p and the erasure of its squashed goal is a
// tautology. Throws std::invalid_argument unless p concludes [] |- {G}.
bool consistency_check(const ProofNode& p);

// Vacuously true for non-tautologies; otherwise the translation of g must be
// provable by G4ip.
bool kolmogorov_check(const Formula& g);

// The Goedel translation keeps letters fixed, so letters must be stable:
// the check proves (~~P => P) => ... => godel(g) over the letters of g.
bool godel_check(const Formula& g);

// (~~P1 => P1) => ... => (~~Pn => Pn) => g, letters in sorted order.
Formula with_stable_letters(const Formula& g);

// Iterative deepening over the full kernel rule set, squash rules included.
// Incomplete: nullopt only means nothing was found within `depth` rule
// applications (squash-free subgoals are handed to G4ip in one step).
std::optional<ProofNode> bounded_search(const Formula& f, int depth);

enum class CorpusConnective { And, Or, Imp, False, True };

struct CorpusSpec {
  int atoms = 2;  // 1..3, named P, Q, R
  int depth = 3;  // maximum number of binary connectives, 0..4
  std::vector<CorpusConnective> connectives{CorpusConnective::And, CorpusConnective::Or,
                                            CorpusConnective::Imp, CorpusConnective::False,
                                            CorpusConnective::True};

  bool has(CorpusConnective c) const;
};

// Canonical order: by number of binary connectives; leaves as atoms, then
// False, then True; larger formulas by connective (And, Or, Imp), then by
// left operand size, then left-to-right in the order of smaller levels.
// Throws std::invalid_argument when the spec is out of bounds.
std::vector<Formula> enumerate_formulas(const CorpusSpec& spec);
std::vector<CorpusConnective> parse_connectives(const std::string& csv);

struct ReportRow {
  Formula formula;
  bool classical_valid = false;
  bool ipc_provable = false;
  bool negneg_provable = false;
  bool squash_provable = false;
  bool countermodel_found = false;
  bool kolmogorov_check = false;
  bool godel_check = false;
  bool consistent = false;
  bool uses_ex_falso = false;
};

struct Report {
  CorpusSpec spec;
  std::vector<ReportRow> rows;
  std::size_t tautologies = 0;
  std::size_t ipc_provable = 0;
  std::size_t squash_provable = 0;
  std::size_t countermodels = 0;
  // G4ip failures for which no countermodel was found within the world bound.
  std::size_t kripke_unresolved = 0;
  double seconds = 0;
};

// A cross-cutting theorem failed on `witness`.
class TheoremViolation : public std::runtime_error {
 public:
  TheoremViolation(const std::string& theorem, const Formula& witness);
  const Formula& witness() const { return witness_; }

 private:
  Formula witness_;
};

struct ReportOptions {
  int threads = 0;  // 0: hardware concurrency
  int kripke_worlds = 3;
  // Called, serialised, with every squashed proof the sweep builds.
  std::function<void(const ProofNode&)> on_squash_proof;
};

// Throws TheoremViolation on the first violated invariant.
Report run_report(const CorpusSpec& spec, const ReportOptions& options = {});
std::string report_json(const Report& r, int indent = 2);

enum class Verdict { Proved, Refuted, Unknown };
std::string_view verdict_name(Verdict v);

struct Exploration {
  Formula formula;
  Verdict verdict;
  std::optional<ProofNode> proof;
};

// Refuted when the erasure is not a tautology (no squashed proof can exist);
// otherwise whatever bounded_search finds.
Exploration explore(const Formula& f, int depth);
std::vector<Formula> explore_questions();

}  // namespace sqk

#endif  // SQK_PROVER_HPP
