#include "g4ip.hpp"

#include <algorithm>
#include <unordered_set>

namespace sqk::detail {

namespace {

bool is_letter(const Formula& f) { return f.is(Connective::Atom) || f.is(Connective::Pred); }

// A G4ip sequent derivation. Hypotheses are referenced by label; the labels
// introduced by a step are listed in `labels`.
struct Deriv {
  enum class Kind {
    Axiom,     // h
    ExFalso,   // h
    AndL,      // h; a, b
    OrL,       // h; l, r
    ImpAtomL,  // h: P => B; b, p
    ImpTrueL,  // h: True => B; b
    ImpAndL,   // h: (C /\ D) => B; k
    ImpOrL,    // h: (C \/ D) => B; k1, k2
    ImpImpL,   // h: (C => D) => B; k, b
    TrueR,
    AndR,
    ImpR,  // x
    OrRL,
    OrRR,
  };

  Kind kind;
  std::string h;
  std::vector<std::string> labels;
  std::vector<Deriv> kids;
};

using Active = std::vector<Hypothesis>;

struct MemoKey {
  std::vector<Formula> hyps;
  Formula goal;
  bool operator==(const MemoKey&) const = default;
};

struct MemoHash {
  std::size_t operator()(const MemoKey& k) const {
    std::size_t h = k.goal.hash();
    for (const auto& f : k.hyps) h = h * 1000003u ^ f.hash();
    return h;
  }
};

class Search {
 public:
  explicit Search(nd::Fresh& fresh) : fresh_(fresh) {}

  std::optional<Deriv> prove(const Active& a, const Formula& g) {
    MemoKey key{{}, g};
    key.hyps.reserve(a.size());
    for (const auto& e : a) key.hyps.push_back(e.formula);
    std::sort(key.hyps.begin(), key.hyps.end());
    if (failed_.contains(key)) return std::nullopt;
    auto d = step(a, g);
    if (!d) failed_.insert(std::move(key));
    return d;
  }

 private:
  using K = Deriv::Kind;

  static Active without(const Active& a, std::size_t i) {
    Active out;
    out.reserve(a.size() + 1);
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != i) out.push_back(a[j]);
    return out;
  }

  // Identical formulas are kept once; True carries no information.
  static void add(Active& a, const std::string& label, const Formula& f) {
    if (f.is(Connective::True)) return;
    for (const auto& e : a)
      if (e.formula == f) return;
    a.push_back({label, f});
  }

  const Hypothesis* find(const Active& a, const Formula& f) const {
    for (const auto& e : a)
      if (e.formula == f) return &e;
    return nullptr;
  }

  static Deriv leaf(K k, std::string h = {}) { return Deriv{k, std::move(h), {}, {}}; }

  std::optional<Deriv> one(K k, std::string h, std::vector<std::string> labels,
                           const Active& a, const Formula& g) {
    auto sub = prove(a, g);
    if (!sub) return std::nullopt;
    return Deriv{k, std::move(h), std::move(labels), {std::move(*sub)}};
  }

  std::optional<Deriv> step(const Active& a, const Formula& g) {
    if (const Hypothesis* e = find(a, g)) return leaf(K::Axiom, e->label);
    if (const Hypothesis* e = find(a, falsum())) return leaf(K::ExFalso, e->label);

    // Invertible left rules, first applicable hypothesis wins.
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Formula& f = a[i].formula;
      const std::string& h = a[i].label;
      if (f.is(Connective::True)) return prove(without(a, i), g);
      if (f.is(Connective::And)) {
        std::string x = fresh_.next(), y = fresh_.next();
        Active next = without(a, i);
        add(next, x, f.lhs());
        add(next, y, f.rhs());
        return one(K::AndL, h, {x, y}, next, g);
      }
      if (f.is(Connective::Or)) {
        std::string l = fresh_.next(), r = fresh_.next();
        Active left = without(a, i), right = left;
        add(left, l, f.lhs());
        add(right, r, f.rhs());
        auto dl = prove(left, g);
        if (!dl) return std::nullopt;
        auto dr = prove(right, g);
        if (!dr) return std::nullopt;
        return Deriv{K::OrL, h, {l, r}, {std::move(*dl), std::move(*dr)}};
      }
      if (!f.is(Connective::Imp)) continue;
      const Formula& c = f.lhs();
      const Formula& b = f.rhs();
      if (c.is(Connective::False)) return prove(without(a, i), g);
      if (c.is(Connective::True)) {
        std::string bl = fresh_.next();
        Active next = without(a, i);
        add(next, bl, b);
        return one(K::ImpTrueL, h, {bl}, next, g);
      }
      if (is_letter(c)) {
        if (const Hypothesis* p = find(a, c)) {
          std::string bl = fresh_.next();
          std::string pl = p->label;
          Active next = without(a, i);
          add(next, bl, b);
          return one(K::ImpAtomL, h, {bl, pl}, next, g);
        }
        continue;
      }
      if (c.is(Connective::And)) {
        std::string k = fresh_.next();
        Active next = without(a, i);
        add(next, k, imp(c.lhs(), imp(c.rhs(), b)));
        return one(K::ImpAndL, h, {k}, next, g);
      }
      if (c.is(Connective::Or)) {
        std::string k1 = fresh_.next(), k2 = fresh_.next();
        Active next = without(a, i);
        add(next, k1, imp(c.lhs(), b));
        add(next, k2, imp(c.rhs(), b));
        return one(K::ImpOrL, h, {k1, k2}, next, g);
      }
    }

    // Invertible right rules.
    if (g.is(Connective::True)) return leaf(K::TrueR);
    if (g.is(Connective::And)) {
      auto l = prove(a, g.lhs());
      if (!l) return std::nullopt;
      auto r = prove(a, g.rhs());
      if (!r) return std::nullopt;
      return Deriv{K::AndR, {}, {}, {std::move(*l), std::move(*r)}};
    }
    if (g.is(Connective::Imp)) {
      std::string x = fresh_.next();
      Active next = a;
      add(next, x, g.lhs());
      return one(K::ImpR, {}, {x}, next, g.rhs());
    }

    // Non-invertible: disjunction right, then nested implications left in
    // hypothesis order.
    if (g.is(Connective::Or)) {
      if (auto l = prove(a, g.lhs())) return Deriv{K::OrRL, {}, {}, {std::move(*l)}};
      if (auto r = prove(a, g.rhs())) return Deriv{K::OrRR, {}, {}, {std::move(*r)}};
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Formula& f = a[i].formula;
      if (!f.is(Connective::Imp) || !f.lhs().is(Connective::Imp)) continue;
      const Formula& c = f.lhs().lhs();
      const Formula& d = f.lhs().rhs();
      const Formula& b = f.rhs();
      std::string k = fresh_.next(), bl = fresh_.next();
      Active first = without(a, i), second = first;
      add(first, k, imp(d, b));
      auto d1 = prove(first, imp(c, d));
      if (!d1) continue;
      add(second, bl, b);
      // The right premise is invertible: its failure is final.
      auto d2 = prove(second, g);
      if (!d2) return std::nullopt;
      return Deriv{K::ImpImpL, a[i].label, {k, bl}, {std::move(*d1), std::move(*d2)}};
    }
    return std::nullopt;
  }

  nd::Fresh& fresh_;
  std::unordered_set<MemoKey, MemoHash> failed_;
};

// Elaboration of a G4ip derivation into natural deduction. `ctx` is the full
// hypothesis list: hypotheses dropped by G4ip stay in scope here.
class Elaborator {
 public:
  explicit Elaborator(nd::Fresh& fresh) : fresh_(fresh) {}

  ProofNode run(const Deriv& d, const nd::Hyps& ctx, const Formula& g) {
    using K = Deriv::Kind;
    using namespace nd;
    auto h_of = [&](const std::string& label) -> const Formula& {
      for (const auto& e : ctx)
        if (e.label == label) return e.formula;
      throw std::logic_error("elaboration: unknown label " + label);
    };
    switch (d.kind) {
      case K::Axiom:
        return hyp(ctx, d.h, g);
      case K::ExFalso:
        return node(Rule::FalseElim, ctx, g, {hyp(ctx, d.h, falsum())});
      case K::AndL: {
        const Formula& f = h_of(d.h);
        Hyps c1 = extend(ctx, d.labels[0], f.lhs());
        Hyps c2 = extend(c1, d.labels[1], f.rhs());
        ProofNode inner = cut(c1, d.labels[1],
                              node(Rule::AndElimR, c1, f.rhs(), {hyp(c1, d.h, f)}),
                              run(d.kids[0], c2, g));
        return cut(ctx, d.labels[0], node(Rule::AndElimL, ctx, f.lhs(), {hyp(ctx, d.h, f)}),
                   std::move(inner));
      }
      case K::OrL: {
        const Formula& f = h_of(d.h);
        return node(Rule::OrElim, ctx, g,
                    {hyp(ctx, d.h, f), run(d.kids[0], extend(ctx, d.labels[0], f.lhs()), g),
                     run(d.kids[1], extend(ctx, d.labels[1], f.rhs()), g)},
                    {d.labels[0], d.labels[1]});
      }
      case K::ImpAtomL: {
        const Formula& f = h_of(d.h);
        ProofNode b = imp_elim(ctx, hyp(ctx, d.h, f), hyp(ctx, d.labels[1], f.lhs()));
        return cut(ctx, d.labels[0], std::move(b),
                   run(d.kids[0], extend(ctx, d.labels[0], f.rhs()), g));
      }
      case K::ImpTrueL: {
        const Formula& f = h_of(d.h);
        ProofNode b = imp_elim(ctx, hyp(ctx, d.h, f), node(Rule::TrueIntro, ctx, verum()));
        return cut(ctx, d.labels[0], std::move(b),
                   run(d.kids[0], extend(ctx, d.labels[0], f.rhs()), g));
      }
      case K::ImpAndL: {
        // k: C => D => B  from  h: C /\ D => B
        const Formula& f = h_of(d.h);
        const Formula& c = f.lhs().lhs();
        const Formula& dd = f.lhs().rhs();
        std::string cl = fresh_.next(), dl = fresh_.next();
        Hyps cc = extend(ctx, cl, c);
        Hyps cd = extend(cc, dl, dd);
        ProofNode body =
            imp_elim(cd, hyp(cd, d.h, f),
                     node(Rule::AndIntro, cd, f.lhs(), {hyp(cd, cl, c), hyp(cd, dl, dd)}));
        ProofNode k = imp_intro(ctx, cl, c, imp_intro(cc, dl, dd, std::move(body)));
        Formula kf = k.sequent.goal;
        return cut(ctx, d.labels[0], std::move(k), run(d.kids[0], extend(ctx, d.labels[0], kf), g));
      }
      case K::ImpOrL: {
        // k1: C => B, k2: D => B  from  h: C \/ D => B
        const Formula& f = h_of(d.h);
        auto branch = [&](const Hyps& base, bool left) {
          const Formula& side = left ? f.lhs().lhs() : f.lhs().rhs();
          std::string x = fresh_.next();
          Hyps cx = extend(base, x, side);
          ProofNode in = node(left ? Rule::OrIntroL : Rule::OrIntroR, cx, f.lhs(), {hyp(cx, x, side)});
          return imp_intro(base, x, side, imp_elim(cx, hyp(cx, d.h, f), std::move(in)));
        };
        Hyps c1 = extend(ctx, d.labels[0], imp(f.lhs().lhs(), f.rhs()));
        Hyps c2 = extend(c1, d.labels[1], imp(f.lhs().rhs(), f.rhs()));
        ProofNode inner = cut(c1, d.labels[1], branch(c1, false), run(d.kids[0], c2, g));
        return cut(ctx, d.labels[0], branch(ctx, true), std::move(inner));
      }
      case K::ImpImpL: {
        // h: (C => D) => B. Left premise proves C => D assuming k: D => B,
        // and D => B follows from h; then B follows from h.
        const Formula& f = h_of(d.h);
        const Formula& c = f.lhs().lhs();
        const Formula& dd = f.lhs().rhs();
        const Formula& b = f.rhs();
        std::string dl = fresh_.next(), cl = fresh_.next();
        Hyps cd = extend(ctx, dl, dd);
        Hyps cdc = extend(cd, cl, c);
        ProofNode k = imp_intro(
            ctx, dl, dd, imp_elim(cd, hyp(cd, d.h, f), imp_intro(cd, cl, c, hyp(cdc, dl, dd))));
        ProofNode cimpd =
            cut(ctx, d.labels[0], std::move(k), run(d.kids[0], extend(ctx, d.labels[0], imp(dd, b)), f.lhs()));
        ProofNode pb = imp_elim(ctx, hyp(ctx, d.h, f), std::move(cimpd));
        return cut(ctx, d.labels[1], std::move(pb), run(d.kids[1], extend(ctx, d.labels[1], b), g));
      }
      case K::TrueR:
        return node(Rule::TrueIntro, ctx, g);
      case K::AndR:
        return node(Rule::AndIntro, ctx, g,
                    {run(d.kids[0], ctx, g.lhs()), run(d.kids[1], ctx, g.rhs())});
      case K::ImpR:
        return imp_intro(ctx, d.labels[0], g.lhs(),
                         run(d.kids[0], extend(ctx, d.labels[0], g.lhs()), g.rhs()));
      case K::OrRL:
        return node(Rule::OrIntroL, ctx, g, {run(d.kids[0], ctx, g.lhs())});
      case K::OrRR:
        return node(Rule::OrIntroR, ctx, g, {run(d.kids[0], ctx, g.rhs())});
    }
    throw std::logic_error("elaboration: unknown step");
  }

 private:
  nd::Fresh& fresh_;
};

Active active_part(const nd::Hyps& context) {
  Active a;
  for (const auto& e : context)
    if (g4ip_applicable(e.formula)) a.push_back(e);
  return a;
}

}  // namespace

bool g4ip_applicable(const Formula& f) { return is_quantifier_free(f) && is_squash_free(f); }

std::optional<ProofNode> g4ip_in_context(const nd::Hyps& context, const Formula& goal,
                                         nd::Fresh& fresh) {
  Search s(fresh);
  auto d = s.prove(active_part(context), goal);
  if (!d) return std::nullopt;
  return Elaborator(fresh).run(*d, context, goal);
}

bool g4ip_decide(const nd::Hyps& context, const Formula& goal) {
  nd::Fresh fresh("h");
  return Search(fresh).prove(active_part(context), goal).has_value();
}

}  // namespace sqk::detail
