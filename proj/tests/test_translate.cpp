#include <doctest.h>

#include "sqk/oracle.hpp"
#include "sqk/prover.hpp"
#include "sqk/syntax.hpp"
#include "sqk/translate.hpp"
#include "support.hpp"

using namespace sqk;

namespace {

Formula F(const char* s) { return parse_formula(s); }

bool has_or_or_exists(const Formula& f) {
  switch (f.kind()) {
    case Connective::Or:
    case Connective::Exists:
      return true;
    case Connective::And:
    case Connective::Imp:
      return has_or_or_exists(f.lhs()) || has_or_or_exists(f.rhs());
    case Connective::Forall:
    case Connective::Squash:
      return has_or_or_exists(f.body());
    default:
      return false;
  }
}

const char* const kFolCorpus[] = {
    "forall x. P(x) \\/ ~P(x)",
    "(exists x. P(x)) => forall x. P(x)",
    "(forall x. P(x)) => exists x. P(x)",
    "~(forall x. P(x)) => exists x. ~P(x)",
    "(exists x. ~P(x)) => ~(forall x. P(x))",
    "forall x. P(x) => Q(x)",
    "(forall x. P(x) /\\ Q(x)) => (forall x. P(x)) /\\ forall x. Q(x)",
    "(exists x. P(x) \\/ Q(x)) => (exists x. P(x)) \\/ exists x. Q(x)",
    "exists x. P(x) => forall y. P(y)",
    "(forall x. P(x) \\/ Q(x)) => (forall x. P(x)) \\/ exists x. Q(x)",
    "~~(exists x. P(x)) => exists x. P(x)",
    "forall x. exists y. P(x) => P(y)",
};

}  // namespace

TEST_CASE("kolmogorov clauses") {
  CHECK(kolmogorov(F("P")) == F("~~P"));
  CHECK(kolmogorov(F("False")) == F("False"));
  CHECK(kolmogorov(F("True")) == F("True"));
  CHECK(kolmogorov(F("P \\/ Q")) == F("~~(~~P \\/ ~~Q)"));
  CHECK(kolmogorov(F("P /\\ Q")) == F("~~(~~P /\\ ~~Q)"));
  CHECK(kolmogorov(F("P => Q")) == F("~~(~~P => ~~Q)"));
  // Negation is an implication into False, so it picks up the implication clause.
  CHECK(kolmogorov(F("~P")) == F("~~(~~P => False)"));
  CHECK_THROWS_AS(kolmogorov(F("forall x. P(x)")), std::invalid_argument);
  CHECK_THROWS_AS(kolmogorov(F("{P}")), std::invalid_argument);
}

TEST_CASE("godel clauses") {
  CHECK(godel(F("P")) == F("P"));
  CHECK(godel(F("P \\/ Q")) == F("~(~P /\\ ~Q)"));
  CHECK(godel(F("exists x. P(x)")) == F("~(forall x. ~P(x))"));
  CHECK(godel(F("forall x. P(x) /\\ Q")) == F("forall x. P(x) /\\ Q"));
  CHECK(godel(F("~(P \\/ Q)")) == F("~~(~P /\\ ~Q)"));
  CHECK_THROWS_AS(godel(F("{P}")), std::invalid_argument);
}

TEST_CASE("kuroda clauses") {
  CHECK(kuroda(F("P \\/ ~P")) == F("~~(P \\/ ~P)"));
  CHECK(kuroda(F("forall x. P(x)")) == F("~~(forall x. ~~P(x))"));
  CHECK(kuroda(F("exists x. P(x)")) == F("~~(exists x. P(x))"));
  CHECK(kuroda(F("exists x. forall y. R(y)")) == F("~~(exists x. forall y. ~~R(y))"));
}

TEST_CASE("squash placement and erasure") {
  CHECK(squash_top(F("P \\/ ~P")) == F("{P \\/ ~P}"));
  CHECK(squash_top(F("False")) == F("{False}"));
  CHECK(squash_top(F("{P}")) == F("{{P}}"));
  CHECK(squash_subformulas(F("forall x. P(x) \\/ ~P(x)")) == F("forall x. {P(x) \\/ ~P(x)}"));
  CHECK(squash_subformulas(F("P \\/ ~P")) == F("{P \\/ ~P}"));
  CHECK(squash_subformulas(F("forall x. exists y. R(x) => R(y)")) ==
        F("forall x. exists y. {R(x) => R(y)}"));
  CHECK(squash_subformulas(F("(forall x. P(x)) => Q")) == F("(forall x. {P(x)}) => {Q}"));
  CHECK(erase_squash(F("{P \\/ ~P}")) == F("P \\/ ~P"));
  CHECK(erase_squash(F("forall x. {P(x)}")) == F("forall x. P(x)"));
  CHECK(erase_squash(F("P => Q")) == F("P => Q"));
  CHECK(erase_squash(F("{{P} => {Q}}")) == F("P => Q"));
}

TEST_CASE("translation by mode name") {
  CHECK(translate(parse_translation_mode("kolmogorov"), F("P")) == F("~~P"));
  CHECK(translate(parse_translation_mode("squash-sub"), F("P")) == F("{P}"));
  CHECK(translate(parse_translation_mode("erase"), F("{P}")) == F("P"));
  CHECK_THROWS_AS(parse_translation_mode("glivenko"), std::invalid_argument);
}

TEST_CASE("classical invariance over the propositional corpus") {
  CorpusSpec spec;
  spec.atoms = 2;
  spec.depth = 3;
  test::BitTable table({"P", "Q"});
  std::size_t worst_num = 0, worst_den = 1;
  for (const auto& f : enumerate_formulas(spec)) {
    const bool valid = table.valid(f);
    REQUIRE(table.valid(kolmogorov(f)) == valid);
    REQUIRE(table.valid(godel(f)) == valid);
    REQUIRE(table.valid(kuroda(f)) == valid);
    REQUIRE(table.eval(kolmogorov(f)) == table.eval(f));
    REQUIRE_FALSE(has_or_or_exists(godel(f)));
    REQUIRE(erase_squash(squash_top(f)) == f);
    REQUIRE(erase_squash(squash_subformulas(f)) == f);
    const std::size_t k = kolmogorov(f).size();
    REQUIRE(k <= 5 * f.size());
    if (k * worst_den > worst_num * f.size()) {
      worst_num = k;
      worst_den = f.size();
    }
  }
  // A lone atom is the worst case: ~~P has five nodes.
  CHECK(worst_num == 5 * worst_den);
}

TEST_CASE("classical invariance on quantified formulas") {
  for (const char* text : kFolCorpus) {
    Formula f = F(text);
    for (int n = 1; n <= 3; ++n) {
      const bool valid = finite_model_valid(f, n);
      CHECK_MESSAGE(finite_model_valid(kuroda(f), n) == valid, text);
      CHECK_MESSAGE(finite_model_valid(godel(f), n) == valid, text);
      CHECK_FALSE(has_or_or_exists(godel(f)));
    }
    CHECK(erase_squash(squash_subformulas(f)) == f);
  }
}
