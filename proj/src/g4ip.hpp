#ifndef SQK_SRC_G4IP_HPP
#define SQK_SRC_G4IP_HPP

#include <optional>

#include "nd.hpp"

namespace sqk::detail {

// G4ip over the squash-free, quantifier-free members of `context`; the proof
// concludes `context |- goal`. New labels come from `fresh`.
std::optional<ProofNode> g4ip_in_context(const nd::Hyps& context, const Formula& goal,
                                         nd::Fresh& fresh);

bool g4ip_decide(const nd::Hyps& context, const Formula& goal);

bool g4ip_applicable(const Formula& f);

}  // namespace sqk::detail

#endif  // SQK_SRC_G4IP_HPP
