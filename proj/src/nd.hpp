#ifndef SQK_SRC_ND_HPP
#define SQK_SRC_ND_HPP

#include <optional>
#include <string>
#include <vector>

#include "sqk/proofkernel.hpp"

// Builders for natural-deduction proof nodes. Every node carries its full
// hypothesis list, which the caller threads explicitly.
namespace sqk::nd {

using Hyps = std::vector<Hypothesis>;

class Fresh {
 public:
  explicit Fresh(std::string prefix) : prefix_(std::move(prefix)) {}
  std::string next() { return prefix_ + std::to_string(++n_); }

 private:
  std::string prefix_;
  int n_ = 0;
};

inline Hyps extend(const Hyps& h, const std::string& label, const Formula& f) {
  Hyps out = h;
  out.push_back({label, f});
  return out;
}

inline ProofNode node(Rule r, const Hyps& h, const Formula& goal, std::vector<ProofNode> premises = {},
                      std::vector<std::string> labels = {}) {
  return ProofNode{r, Sequent{h, goal}, std::move(labels), {}, {}, {}, std::move(premises)};
}

inline ProofNode hyp(const Hyps& h, const std::string& label, const Formula& goal) {
  return node(Rule::Hyp, h, goal, {}, {label});
}

// body proves B under h + label:A.
inline ProofNode imp_intro(const Hyps& h, const std::string& label, const Formula& a, ProofNode body) {
  Formula goal = imp(a, body.sequent.goal);
  return node(Rule::ImpIntro, h, goal, {std::move(body)}, {label});
}

inline ProofNode imp_elim(const Hyps& h, ProofNode f, ProofNode a) {
  Formula goal = f.sequent.goal.rhs();
  return node(Rule::ImpElim, h, goal, {std::move(f), std::move(a)});
}

// Local lemma: `body` proves G under h + label:A, `proof` proves A under h.
inline ProofNode cut(const Hyps& h, const std::string& label, ProofNode proof, ProofNode body) {
  Formula a = proof.sequent.goal;
  return imp_elim(h, imp_intro(h, label, a, std::move(body)), std::move(proof));
}

}  // namespace sqk::nd

#endif  // SQK_SRC_ND_HPP
