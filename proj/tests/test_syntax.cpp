#include <doctest.h>

#include "sqk/formula.hpp"
#include "sqk/prover.hpp"
#include "sqk/syntax.hpp"

using namespace sqk;

TEST_CASE("parse: implication is right associative") {
  CHECK(parse_formula("A => (B => A)") == imp(atom("A"), imp(atom("B"), atom("A"))));
  CHECK(parse_formula("A => B => C") == imp(atom("A"), imp(atom("B"), atom("C"))));
  CHECK(parse_formula("(A => B) => C") == imp(imp(atom("A"), atom("B")), atom("C")));
}

TEST_CASE("parse: negation is implication into False") {
  Formula f = parse_formula("~P");
  CHECK(f == imp(atom("P"), falsum()));
  CHECK(f.is_negation());
  CHECK(parse_formula("~~P") == neg(neg(atom("P"))));
}

TEST_CASE("parse: precedence") {
  CHECK(parse_formula("A /\\ B \\/ C") == disj(conj(atom("A"), atom("B")), atom("C")));
  CHECK(parse_formula("A \\/ B /\\ C") == disj(atom("A"), conj(atom("B"), atom("C"))));
  CHECK(parse_formula("A \\/ B \\/ C") == disj(disj(atom("A"), atom("B")), atom("C")));
  CHECK(parse_formula("A /\\ B => C \\/ D") ==
        imp(conj(atom("A"), atom("B")), disj(atom("C"), atom("D"))));
  CHECK(parse_formula("~A /\\ B") == conj(neg(atom("A")), atom("B")));
  CHECK(parse_formula("{A} => A") == imp(squash(atom("A")), atom("A")));
}

TEST_CASE("parse: quantifiers extend as far right as possible") {
  Formula f = parse_formula("forall x. P(x) \\/ ~P(x)");
  REQUIRE(f.is(Connective::Forall));
  CHECK(f.var() == "x");
  CHECK(f.body() == disj(pred("P", "x"), neg(pred("P", "x"))));
  CHECK(parse_formula("exists x. P(x) => Q") ==
        exists("x", imp(pred("P", "x"), atom("Q"))));
  CHECK(parse_formula("(exists x. P(x)) => Q") ==
        imp(exists("x", pred("P", "x")), atom("Q")));
}

TEST_CASE("parse errors carry offsets") {
  auto offset_of = [](const char* text) {
    try {
      parse_formula(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1L;
  };
  CHECK(offset_of("P =>") == 4);
  CHECK(offset_of("P & Q") == 2);
  CHECK(offset_of("(P") == 2);
  CHECK(offset_of("P Q") == 2);
  CHECK(offset_of("") == 0);
  CHECK(offset_of("p") == 0);
  CHECK(offset_of("forall X. P(X)") >= 0);
  CHECK_THROWS_AS(parse_formula("P /\\ P(x)"), ParseError);
  CHECK_THROWS_AS(parse_formula("{P"), ParseError);
}

TEST_CASE("print: sugar and minimal parentheses") {
  CHECK(print_formula(imp(atom("P"), falsum())) == "~P");
  CHECK(print_formula(squash(disj(atom("P"), neg(atom("P"))))) == "{P \\/ ~P}");
  CHECK(print_formula(imp(imp(atom("A"), atom("B")), atom("C"))) == "(A => B) => C");
  CHECK(print_formula(imp(atom("A"), imp(atom("B"), atom("C")))) == "A => B => C");
  CHECK(print_formula(neg(neg(disj(atom("P"), neg(atom("P")))))) == "~~(P \\/ ~P)");
  CHECK(print_formula(conj(disj(atom("A"), atom("B")), atom("C"))) == "(A \\/ B) /\\ C");
  CHECK(print_formula(disj(atom("A"), disj(atom("B"), atom("C")))) == "A \\/ (B \\/ C)");
  CHECK(print_formula(imp(exists("x", pred("P", "x")), atom("Q"))) == "(exists x. P(x)) => Q");
  CHECK(print_formula(imp(atom("Q"), exists("x", pred("P", "x")))) == "Q => exists x. P(x)");
  CHECK(print_formula(neg(forall("x", pred("P", "x")))) == "~forall x. P(x)");
  CHECK(print_formula(imp(falsum(), verum())) == "False => True");
}

TEST_CASE("print: sexp form") {
  CHECK(print_formula_sexp(parse_formula("~A => {B /\\ C}")) == "(=> (~ A) ({} (/\\ B C)))");
  CHECK(print_formula_sexp(parse_formula("forall x. P(x)")) == "(forall x (P x))");
}

TEST_CASE("free variables") {
  CHECK(free_vars(parse_formula("forall x. P(x)")).empty());
  CHECK(free_vars(parse_formula("P(x)")) == std::set<std::string>{"x"});
  CHECK(free_vars(parse_formula("exists x. P(x) => Q(y)")) == std::set<std::string>{"y"});
}

TEST_CASE("capture-avoiding substitution of individual variables") {
  Formula f = parse_formula("forall y. P(x) => Q(y)");
  Formula g = subst_var(f, "x", "y");
  CHECK(free_vars(g) == std::set<std::string>{"y"});
  CHECK(g.body().lhs() == pred("P", "y"));
  CHECK(g.var() != "y");
  CHECK(subst_var(parse_formula("forall x. P(x)"), "x", "z") == parse_formula("forall x. P(x)"));
}

TEST_CASE("alpha equality of formulas") {
  CHECK(alpha_equal(parse_formula("forall x. P(x)"), parse_formula("forall y. P(y)")));
  CHECK_FALSE(alpha_equal(parse_formula("forall x. P(x)"), parse_formula("forall y. P(z)")));
  CHECK(alpha_equal(parse_formula("exists x. forall y. R(x) => R(y)"),
                    parse_formula("exists a. forall b. R(a) => R(b)")));
}

TEST_CASE("size and depth") {
  Formula f = parse_formula("(P => Q) /\\ ~R");
  CHECK(f.size() == 7);
  CHECK(depth(f) == 2);
  CHECK(depth(atom("P")) == 0);
}

TEST_CASE("round trip over the corpus") {
  CorpusSpec spec;
  spec.atoms = 2;
  spec.depth = 3;
  std::size_t checked = 0;
  for (const auto& f : enumerate_formulas(spec)) {
    const std::string text = print_formula(f);
    Formula back = parse_formula(text);
    REQUIRE_MESSAGE(back == f, text);
    // A fully parenthesized rendering parses to the same tree.
    REQUIRE_MESSAGE(parse_formula(print_formula_full(f)) == f, print_formula_full(f));
    ++checked;
  }
  CHECK(checked == 35764);
}

TEST_CASE("round trip with quantifiers and squash") {
  for (const char* text : {
           "forall x. {P(x) \\/ ~P(x)}",
           "(exists x. P(x)) => forall x. P(x)",
           "~forall x. ~P(x)",
           "~(forall x. P(x)) /\\ Q",
           "{{P}} => {P}",
           "forall x. exists y. R(x) /\\ R(y)",
           "({P} => {Q}) => {P => Q}",
           "~~forall x. ~~P(x)",
       }) {
    Formula f = parse_formula(text);
    CHECK(print_formula(f) == text);
    CHECK(alpha_equal(parse_formula(print_formula_full(f)), f));
  }
}
