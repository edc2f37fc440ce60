#ifndef SQK_PROOFKERNEL_HPP
#define SQK_PROOFKERNEL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sqk/evidence.hpp"
#include "sqk/formula.hpp"

namespace sqk {

enum class Rule {
  Hyp,
  ImpIntro,
  ImpElim,
  AndIntro,
  AndElimL,
  AndElimR,
  OrIntroL,
  OrIntroR,
  OrElim,
  FalseElim,
  TrueIntro,
  ForallIntro,
  ForallElim,
  ExistsIntro,
  ExistsElim,
  SquashIntro,
  SquashElim,
  ClassicalIntro,
};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

struct Hypothesis {
  std::string label;
  Formula formula;
};

struct Sequent {
  std::vector<Hypothesis> hyps;
  Formula goal;
};

// One rule application. Parameters, by rule:
//   Hyp, ImpIntro                 labels = {x}
//   OrElim                        labels = {left, right}
//   SquashElim                    labels = {squashed hypothesis u, unhidden v}
//   ForallIntro                   eigen
//   ForallElim, ExistsIntro       witness
//   ExistsElim                    eigen, labels = {l}
//   OrIntroL/OrIntroR             side ("left"/"right"), optional
struct ProofNode {
  Rule rule;
  Sequent sequent;
  std::vector<std::string> labels;
  std::optional<std::string> witness;
  std::optional<std::string> eigen;
  std::optional<std::string> side;
  std::vector<ProofNode> premises;
};

// Rejection of a proof, naming the offending node by its child-index path
// from the root.
class CheckError : public std::runtime_error {
 public:
  CheckError(std::vector<std::size_t> path, Rule rule, const std::string& what);

  const std::vector<std::size_t>& path() const { return path_; }
  Rule rule() const { return rule_; }
  std::string path_string() const;

 private:
  std::vector<std::size_t> path_;
  Rule rule_;
};

// Verifies every node and returns the realizer extracted for the root.
// Goals of the form {G} always extract to star. Throws CheckError.
Term check_proof(const ProofNode& p);

bool uses_rule(const ProofNode& p, Rule r);
std::size_t proof_size(const ProofNode& p);

// Proof and sequent files are S-expressions:
//   proof    := "(" rulename goalsexp param* proof* ")"
//   goalsexp := "(" "goal" sequent ")"
//   sequent  := "(" hyp* "|-" formula ")"
//   hyp      := "(" label formula ")"
//   param    := "(" ("label"|"side"|"witness"|"eigen") value ")"
// A formula is either a quoted ASCII formula ("A => B") or an S-expression
// such as (=> A (~ B)), ({} P), (forall x (P x)).
Sequent parse_sequent(std::string_view text);
ProofNode parse_proof(std::string_view text);
std::string print_sequent(const Sequent& s);
std::string print_proof(const ProofNode& p);

}  // namespace sqk

#endif  // SQK_PROOFKERNEL_HPP
