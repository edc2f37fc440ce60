#include "sqk/translate.hpp"

#include <stdexcept>
#include <string>

namespace sqk {

namespace {

Formula dneg(Formula f) { return neg(neg(std::move(f))); }

void require_squash_free(const Formula& f, const char* who) {
  if (!is_squash_free(f))
    throw std::invalid_argument(std::string(who) + ": input must be squash-free");
}

Formula kolmogorov_rec(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Pred:
      return dneg(f);
    case Connective::False:
    case Connective::True:
      return f;
    case Connective::And:
      return dneg(conj(kolmogorov_rec(f.lhs()), kolmogorov_rec(f.rhs())));
    case Connective::Or:
      return dneg(disj(kolmogorov_rec(f.lhs()), kolmogorov_rec(f.rhs())));
    case Connective::Imp:
      return dneg(imp(kolmogorov_rec(f.lhs()), kolmogorov_rec(f.rhs())));
    default:
      throw std::invalid_argument("kolmogorov: defined for propositional formulas only");
  }
}

Formula godel_rec(const Formula& f) {
  switch (f.kind()) {
    case Connective::And:
      return conj(godel_rec(f.lhs()), godel_rec(f.rhs()));
    case Connective::Or:
      return neg(conj(neg(godel_rec(f.lhs())), neg(godel_rec(f.rhs()))));
    case Connective::Imp:
      return imp(godel_rec(f.lhs()), godel_rec(f.rhs()));
    case Connective::Forall:
      return forall(f.var(), godel_rec(f.body()));
    case Connective::Exists:
      return neg(forall(f.var(), neg(godel_rec(f.body()))));
    default:
      return f;
  }
}

Formula kuroda_rec(const Formula& f) {
  switch (f.kind()) {
    case Connective::And:
      return conj(kuroda_rec(f.lhs()), kuroda_rec(f.rhs()));
    case Connective::Or:
      return disj(kuroda_rec(f.lhs()), kuroda_rec(f.rhs()));
    case Connective::Imp:
      return imp(kuroda_rec(f.lhs()), kuroda_rec(f.rhs()));
    case Connective::Forall:
      return forall(f.var(), dneg(kuroda_rec(f.body())));
    case Connective::Exists:
      return exists(f.var(), kuroda_rec(f.body()));
    default:
      return f;
  }
}

}  // namespace

Formula kolmogorov(const Formula& f) {
  require_squash_free(f, "kolmogorov");
  return kolmogorov_rec(f);
}

Formula godel(const Formula& f) {
  require_squash_free(f, "godel");
  return godel_rec(f);
}

Formula kuroda(const Formula& f) {
  require_squash_free(f, "kuroda");
  return dneg(kuroda_rec(f));
}

Formula squash_top(const Formula& f) { return squash(f); }

Formula squash_subformulas(const Formula& f) {
  require_squash_free(f, "squash_subformulas");
  if (is_quantifier_free(f)) return squash(f);
  switch (f.kind()) {
    case Connective::Forall:
      return forall(f.var(), squash_subformulas(f.body()));
    case Connective::Exists:
      return exists(f.var(), squash_subformulas(f.body()));
    case Connective::And:
      return conj(squash_subformulas(f.lhs()), squash_subformulas(f.rhs()));
    case Connective::Or:
      return disj(squash_subformulas(f.lhs()), squash_subformulas(f.rhs()));
    case Connective::Imp:
      return imp(squash_subformulas(f.lhs()), squash_subformulas(f.rhs()));
    default:
      return squash(f);
  }
}

Formula erase_squash(const Formula& f) {
  switch (f.kind()) {
    case Connective::Squash:
      return erase_squash(f.body());
    case Connective::And:
      return conj(erase_squash(f.lhs()), erase_squash(f.rhs()));
    case Connective::Or:
      return disj(erase_squash(f.lhs()), erase_squash(f.rhs()));
    case Connective::Imp:
      return imp(erase_squash(f.lhs()), erase_squash(f.rhs()));
    case Connective::Forall:
      return forall(f.var(), erase_squash(f.body()));
    case Connective::Exists:
      return exists(f.var(), erase_squash(f.body()));
    default:
      return f;
  }
}

TranslationMode parse_translation_mode(std::string_view name) {
  if (name == "kolmogorov") return TranslationMode::Kolmogorov;
  if (name == "godel") return TranslationMode::Godel;
  if (name == "kuroda") return TranslationMode::Kuroda;
  if (name == "squash-top") return TranslationMode::SquashTop;
  if (name == "squash-sub") return TranslationMode::SquashSub;
  if (name == "erase") return TranslationMode::Erase;
  throw std::invalid_argument("unknown translation mode '" + std::string(name) + "'");
}

Formula translate(TranslationMode mode, const Formula& f) {
  switch (mode) {
    case TranslationMode::Kolmogorov: return kolmogorov(f);
    case TranslationMode::Godel: return godel(f);
    case TranslationMode::Kuroda: return kuroda(f);
    case TranslationMode::SquashTop: return squash_top(f);
    case TranslationMode::SquashSub: return squash_subformulas(f);
    case TranslationMode::Erase: return erase_squash(f);
  }
  return f;
}

}  // namespace sqk
