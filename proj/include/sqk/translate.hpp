#ifndef SQK_TRANSLATE_HPP
#define SQK_TRANSLATE_HPP

#include <string_view>

#include "sqk/formula.hpp"

namespace sqk {

// Double-negation translations. Each rejects squashed input with
// std::invalid_argument; kolmogorov also rejects quantifiers.

// Atoms become ~~P and every connective is wrapped in ~~; False stays False.
Formula kolmogorov(const Formula& f);

// Goedel's translation: homomorphic except A \/ B => ~(~A /\ ~B) and
// exists x. A => ~forall x. ~A. The result contains no \/ and no exists.
Formula godel(const Formula& f);

// Kuroda's translation: ~~ in front, and ~~ right after every forall.
Formula kuroda(const Formula& f);

Formula squash_top(const Formula& f);

// Squashes every maximal quantifier-free subformula, leaving quantifiers
// (and connectives above them) in place.
Formula squash_subformulas(const Formula& f);

Formula erase_squash(const Formula& f);

enum class TranslationMode { Kolmogorov, Godel, Kuroda, SquashTop, SquashSub, Erase };

// "kolmogorov" | "godel" | "kuroda" | "squash-top" | "squash-sub" | "erase"
TranslationMode parse_translation_mode(std::string_view name);
Formula translate(TranslationMode mode, const Formula& f);

}  // namespace sqk

#endif  // SQK_TRANSLATE_HPP
