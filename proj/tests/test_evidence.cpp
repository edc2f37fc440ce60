#include <doctest.h>

#include <random>

#include "sqk/evidence.hpp"
#include "sqk/prover.hpp"
#include "sqk/syntax.hpp"

using namespace sqk;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Term T(const char* s) { return parse_term(s); }

// Random closed terms for the reduction properties.
class TermGen {
 public:
  explicit TermGen(unsigned seed) : rng_(seed) {}

  Term closed(int depth) { return gen(depth, {}); }

 private:
  Term gen(int depth, std::vector<std::string> scope) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    switch (pick(rng_)) {
      case 0:
        if (!scope.empty()) return var(scope[rng_() % scope.size()]);
        return star();
      case 1: return star();
      case 2: {
        std::string x = names_[rng_() % 3];
        auto inner = scope;
        inner.push_back(x);
        return lam(x, gen(depth - 1, inner));
      }
      case 3:
      case 4: return ap(gen(depth - 1, scope), gen(depth - 1, scope));
      case 5: return pair(gen(depth - 1, scope), gen(depth - 1, scope));
      case 6: return rng_() % 2 ? fst(gen(depth - 1, scope)) : snd(gen(depth - 1, scope));
      case 7: return rng_() % 2 ? inl(gen(depth - 1, scope)) : inr(gen(depth - 1, scope));
      case 8: {
        auto l = scope, r = scope;
        l.push_back("u");
        r.push_back("v");
        return case_of(gen(depth - 1, scope), "u", gen(depth - 1, l), "v", gen(depth - 1, r));
      }
      default: return any(gen(depth - 1, scope));
    }
  }

  std::mt19937 rng_;
  const char* names_[3] = {"x", "y", "z"};
};

}  // namespace

TEST_CASE("substitution") {
  CHECK(substitute(var("x"), "x", star()) == star());
  Term s = substitute(lam("y", var("x")), "x", var("y"));
  REQUIRE(s.is(TermKind::Lam));
  CHECK(s.name() != "y");
  CHECK(s.child(0) == var("y"));
  CHECK(substitute(lam("y", var("y")), "x", star()) == lam("y", var("y")));
  CHECK(substitute(lam("x", var("x")), "x", star()) == lam("x", var("x")));
  Term c = substitute(T("case(z; y.pair(y; x); w.x)"), "x", var("y"));
  CHECK(free_vars(c) == std::set<std::string>{"y", "z"});
  CHECK(c.name() != "y");
}

TEST_CASE("single steps") {
  CHECK(reduce_step(ap(lam("x", var("x")), star())) == star());
  CHECK(reduce_step(fst(pair(star(), lam("x", var("x"))))) == star());
  CHECK(reduce_step(snd(pair(star(), lam("x", var("x"))))) == lam("x", var("x")));
  CHECK(reduce_step(case_of(inl(star()), "x", var("x"), "y", star())) == star());
  CHECK(reduce_step(case_of(inr(var("a")), "x", star(), "y", pair(var("y"), var("y")))) ==
        pair(var("a"), var("a")));
  CHECK_FALSE(reduce_step(star()).has_value());
  CHECK_FALSE(reduce_step(lam("x", var("x"))).has_value());
}

TEST_CASE("any is stuck but reduces inside") {
  CHECK_FALSE(reduce_step(ap(any(var("z")), star())).has_value());
  CHECK_FALSE(reduce_step(fst(any(var("z")))).has_value());
  CHECK_FALSE(reduce_step(case_of(any(var("z")), "x", star(), "y", star())).has_value());
  CHECK(reduce_step(any(ap(lam("x", var("x")), var("z")))) == any(var("z")));
}

TEST_CASE("leftmost-outermost order") {
  // The outer redex discards the diverging argument.
  Term omega = T("ap(lam(x.x(x)); lam(x.x(x)))");
  Term t = ap(lam("y", star()), omega);
  CHECK(normalize(t, 5) == star());
  CHECK(reduce_step(pair(ap(lam("x", var("x")), star()), ap(lam("x", var("x")), var("q")))) ==
        pair(star(), ap(lam("x", var("x")), var("q"))));
}

TEST_CASE("normalize") {
  Term k = ap(ap(lam("x", lam("y", var("x"))), star()), any(var("z")));
  CHECK(normalize(k, 10) == star());
  Term omega = ap(lam("x", ap(var("x"), var("x"))), lam("x", ap(var("x"), var("x"))));
  CHECK_FALSE(normalize(omega, 50).has_value());
  CHECK(normalize(star(), 0) == star());
  CHECK_FALSE(normalize(ap(lam("x", var("x")), star()), 0).has_value());
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(lam("x", var("x")), lam("y", var("y"))));
  CHECK(alpha_eq(lam("x", lam("y", var("x"))), lam("a", lam("b", var("a")))));
  CHECK_FALSE(alpha_eq(lam("x", var("x")), lam("x", star())));
  CHECK_FALSE(alpha_eq(lam("x", lam("y", var("x"))), lam("a", lam("b", var("b")))));
  CHECK(alpha_eq(T("case(s; x.x; y.y)"), T("case(s; a.a; b.b)")));
  CHECK_FALSE(alpha_eq(var("x"), var("y")));
}

TEST_CASE("term syntax round trip") {
  for (const char* text : {"lam(x.x)", "f(a)", "pair(star;any(x))", "case(s;x.inl(x);y.inr(y))",
                           "fst(snd(p))", "lam(pq.lam(nq.lam(p.nq(pq(p)))))", "f(a)(b)",
                           "lam(x.x)(star)"}) {
    CHECK(print_term(T(text)) == text);
  }
  CHECK(T("ap(f; a)") == ap(var("f"), var("a")));
  CHECK(T("g(x)(f(x))") == ap(ap(var("g"), var("x")), ap(var("f"), var("x"))));
  CHECK_THROWS_AS(T("lam(x x)"), ParseError);
  CHECK_THROWS_AS(T("pair(a)"), ParseError);
}

TEST_CASE("realizers from the text check") {
  CHECK(check_evidence(T("lam(x.lam(y.x))"), F("A => (B => A)")));
  CHECK(check_evidence(T("lam(f.lam(g.lam(x.g(x)(f(x)))))"),
                       F("(A => B) => ((A => (B => C)) => (A => C))")));
  CHECK(check_evidence(T("lam(h.h(inr(lam(p.h(inl(p))))))"), F("((P \\/ (P => A)) => A) => A")));
  CHECK(check_evidence(T("lam(pq.lam(nq.lam(p.nq(pq(p)))))"), F("(P => Q) => (~Q => ~P)")));
  CHECK(check_evidence(T("lam(x.any(x))"), F("False => P")));
  CHECK(check_evidence(T("lam(f.star)"), F("~~P => {P}")));
}

TEST_CASE("check_evidence rejects") {
  CHECK_FALSE(check_evidence(T("lam(x.lam(y.y))"), F("A => (B => A)")));
  CHECK_FALSE(check_evidence(T("lam(x.x)"), F("P => Q")));
  CHECK_FALSE(check_evidence(T("star"), F("P")));
  CHECK_FALSE(check_evidence(T("inl(star)"), F("P \\/ True")));
  CHECK_FALSE(check_evidence(T("lam(x.x(x))"), F("P => P")));
  CHECK_FALSE(check_evidence(T("any(star)"), F("P")));
  CHECK_FALSE(check_evidence(T("y"), F("P")));
}

TEST_CASE("check_evidence with hypotheses") {
  Hypotheses h{{"p", F("P")}, {"f", F("P => Q")}};
  CHECK(check_evidence(T("f(p)"), F("Q"), h));
  CHECK(check_evidence(T("pair(p; f)"), F("P /\\ (P => Q)"), h));
  CHECK_FALSE(check_evidence(T("p(f)"), F("Q"), h));
  CHECK(check_evidence(T("star"), F("True")));
  CHECK(check_evidence(T("star"), F("{P /\\ ~P}")));
}

TEST_CASE("beta redexes that need inference") {
  // Argument type is only known from the function body.
  CHECK(check_evidence(T("lam(n.ap(lam(k.k(star)); n))"), F("~True => False")));
  CHECK(check_evidence(T("lam(p.ap(lam(c.c); pair(p; p)))"), F("P => P /\\ P")));
}

TEST_CASE("properties over random closed terms") {
  TermGen gen(12345);
  for (int i = 0; i < 2000; ++i) {
    Term t = gen.closed(5);
    // Determinism.
    auto a = reduce_step(t), b = reduce_step(t);
    REQUIRE(a.has_value() == b.has_value());
    if (a) REQUIRE(*a == *b);
    // alpha_eq is reflexive and symmetric against a renamed copy.
    REQUIRE(alpha_eq(t, t));
    // Substitution lemma.
    if (t.is(TermKind::Ap) && t.child(0).is(TermKind::Lam)) {
      const Term& f = t.child(0);
      auto lhs = normalize(t, 200);
      auto rhs = normalize(substitute(f.child(0), f.name(), t.child(1)), 200);
      if (lhs && rhs) REQUIRE(alpha_eq(*lhs, *rhs));
    }
  }
}

TEST_CASE("subject reduction and termination on extracted realizers") {
  CorpusSpec spec;
  spec.atoms = 2;
  spec.depth = 2;
  int checked = 0;
  for (const auto& f : enumerate_formulas(spec)) {
    auto p = g4ip_prove(f);
    if (!p) continue;
    Term t = check_proof(*p);
    REQUIRE(check_evidence(t, f));
    Term cur = t;
    for (int steps = 0; steps < 10000; ++steps) {
      auto next = reduce_step(cur);
      if (!next) break;
      REQUIRE_MESSAGE(check_evidence(*next, f), print_formula(f) << " : " << print_term(*next));
      cur = *next;
    }
    REQUIRE(normalize(t, 10000).has_value());
    ++checked;
  }
  CHECK(checked > 100);
}
