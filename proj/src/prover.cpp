#include "sqk/prover.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "g4ip.hpp"
#include "nd.hpp"
#include "sqk/evidence.hpp"
#include "sqk/oracle.hpp"
#include "sqk/syntax.hpp"
#include "sqk/translate.hpp"

namespace sqk {

namespace {

void require_propositional(const Formula& f, const char* who) {
  if (!detail::g4ip_applicable(f))
    throw std::invalid_argument(std::string(who) + ": expected a squash-free propositional formula");
}

}  // namespace

std::optional<ProofNode> g4ip_prove(const Formula& f) {
  require_propositional(f, "g4ip_prove");
  nd::Fresh fresh("h");
  return detail::g4ip_in_context({}, f, fresh);
}

bool g4ip_provable(const Formula& f) {
  require_propositional(f, "g4ip_provable");
  return detail::g4ip_decide({}, f);
}

std::optional<ProofNode> classical_pipeline(const Formula& g) {
  require_propositional(g, "classical_pipeline");
  if (!truth_table_valid(g)) return std::nullopt;
  nd::Fresh fresh("h");
  auto nn = detail::g4ip_in_context({}, neg(neg(g)), fresh);
  if (!nn) throw TheoremViolation("Glivenko: no G4ip proof of ~~G for a tautology", g);
  return nd::node(Rule::ClassicalIntro, {}, squash(g), {std::move(*nn)});
}

bool consistency_check(const ProofNode& p) {
  const Sequent& s = p.sequent;
  if (!s.hyps.empty() || !s.goal.is(Connective::Squash))
    throw std::invalid_argument("consistency_check: conclusion is not of the form [] |- {G}");
  try {
    check_proof(p);
  } catch (const CheckError&) {
    return false;
  }
  return truth_table_valid(erase_squash(s.goal.body()));
}

bool kolmogorov_check(const Formula& g) {
  require_propositional(g, "kolmogorov_check");
  return !truth_table_valid(g) || g4ip_provable(kolmogorov(g));
}

Formula with_stable_letters(const Formula& g) {
  nd::Hyps stable;
  for (const auto& name : letters(g)) {
    Formula p = name.find('(') == std::string::npos
                    ? atom(name)
                    : pred(name.substr(0, name.find('(')),
                           name.substr(name.find('(') + 1, name.size() - name.find('(') - 2));
    stable.push_back({"", imp(neg(neg(p)), p)});
  }
  Formula out = g;
  for (auto it = stable.rbegin(); it != stable.rend(); ++it) out = imp(it->formula, out);
  return out;
}

bool godel_check(const Formula& g) {
  require_propositional(g, "godel_check");
  return !truth_table_valid(g) || g4ip_provable(with_stable_letters(godel(g)));
}

namespace {

class Bounded {
 public:
  std::optional<ProofNode> run(const Formula& f, int depth) {
    for (int d = 1; d <= depth; ++d)
      if (auto p = go({}, f, d)) return p;
    return std::nullopt;
  }

 private:
  using Hyps = nd::Hyps;

  static bool in(const Hyps& ctx, const Formula& f) {
    return std::any_of(ctx.begin(), ctx.end(),
                       [&](const Hypothesis& h) { return alpha_equal(h.formula, f); });
  }

  std::optional<ProofNode> go(const Hyps& ctx, const Formula& g, int d) {
    using namespace nd;
    if (d <= 0) return std::nullopt;
    for (const auto& h : ctx)
      if (alpha_equal(h.formula, g)) return hyp(ctx, h.label, g);

    if (detail::g4ip_applicable(g)) {
      if (auto p = detail::g4ip_in_context(ctx, g, fresh_)) return p;
      // With nothing squashed in scope G4ip has already decided.
      if (std::all_of(ctx.begin(), ctx.end(),
                      [](const Hypothesis& h) { return detail::g4ip_applicable(h.formula); }))
        return std::nullopt;
    }

    if (g.is(Connective::Squash)) {
      const Formula& a = g.body();
      if (auto p = go(ctx, a, d - 1)) return node(Rule::SquashIntro, ctx, g, {std::move(*p)});
      Formula nna = neg(neg(a));
      std::optional<ProofNode> p;
      if (detail::g4ip_applicable(a)) p = detail::g4ip_in_context(ctx, nna, fresh_);
      if (!p) p = go(ctx, nna, d - 1);
      if (p) return node(Rule::ClassicalIntro, ctx, g, {std::move(*p)});
    }
    if (g.is(Connective::Squash) || g.is(Connective::False)) {
      for (const auto& u : ctx) {
        if (!u.formula.is(Connective::Squash) || in(ctx, u.formula.body())) continue;
        std::string v = fresh_.next();
        if (auto p = go(extend(ctx, v, u.formula.body()), g, d - 1))
          return node(Rule::SquashElim, ctx, g, {std::move(*p)}, {u.label, v});
      }
    }

    if (g.is(Connective::True)) return node(Rule::TrueIntro, ctx, g);
    if (g.is(Connective::Imp)) {
      std::string x = fresh_.next();
      if (auto p = go(extend(ctx, x, g.lhs()), g.rhs(), d - 1))
        return imp_intro(ctx, x, g.lhs(), std::move(*p));
    }
    if (g.is(Connective::And)) {
      auto l = go(ctx, g.lhs(), d - 1);
      if (l) {
        if (auto r = go(ctx, g.rhs(), d - 1))
          return node(Rule::AndIntro, ctx, g, {std::move(*l), std::move(*r)});
      }
    }
    if (g.is(Connective::Or)) {
      if (auto l = go(ctx, g.lhs(), d - 1)) return node(Rule::OrIntroL, ctx, g, {std::move(*l)});
      if (auto r = go(ctx, g.rhs(), d - 1)) return node(Rule::OrIntroR, ctx, g, {std::move(*r)});
    }

    for (const auto& h : ctx) {
      const Formula& f = h.formula;
      if (f.is(Connective::False))
        return node(Rule::FalseElim, ctx, g, {hyp(ctx, h.label, f)});
      if (f.is(Connective::And) && !(in(ctx, f.lhs()) && in(ctx, f.rhs()))) {
        std::string x = fresh_.next(), y = fresh_.next();
        Hyps c1 = extend(ctx, x, f.lhs());
        Hyps c2 = extend(c1, y, f.rhs());
        if (auto p = go(c2, g, d - 1)) {
          ProofNode inner =
              cut(c1, y, node(Rule::AndElimR, c1, f.rhs(), {hyp(c1, h.label, f)}), std::move(*p));
          return cut(ctx, x, node(Rule::AndElimL, ctx, f.lhs(), {hyp(ctx, h.label, f)}),
                     std::move(inner));
        }
      }
      if (f.is(Connective::Or) && !in(ctx, f.lhs()) && !in(ctx, f.rhs())) {
        std::string l = fresh_.next(), r = fresh_.next();
        auto pl = go(extend(ctx, l, f.lhs()), g, d - 1);
        if (!pl) continue;
        auto pr = go(extend(ctx, r, f.rhs()), g, d - 1);
        if (!pr) continue;
        return node(Rule::OrElim, ctx, g, {hyp(ctx, h.label, f), std::move(*pl), std::move(*pr)},
                    {l, r});
      }
      if (f.is(Connective::Imp) && !in(ctx, f.rhs())) {
        auto pa = go(ctx, f.lhs(), d - 1);
        if (!pa) continue;
        std::string b = fresh_.next();
        if (auto body = go(extend(ctx, b, f.rhs()), g, d - 1))
          return cut(ctx, b, imp_elim(ctx, hyp(ctx, h.label, f), std::move(*pa)), std::move(*body));
      }
    }
    return std::nullopt;
  }

  nd::Fresh fresh_{"h"};
};

}  // namespace

std::optional<ProofNode> bounded_search(const Formula& f, int depth) {
  if (!is_quantifier_free(f)) throw std::invalid_argument("bounded_search: expected a propositional formula");
  return Bounded{}.run(f, depth);
}

bool CorpusSpec::has(CorpusConnective c) const {
  return std::find(connectives.begin(), connectives.end(), c) != connectives.end();
}

std::vector<Formula> enumerate_formulas(const CorpusSpec& spec) {
  if (spec.atoms < 1 || spec.atoms > 3) throw std::invalid_argument("corpus atoms must be 1..3");
  if (spec.depth < 0 || spec.depth > 4) throw std::invalid_argument("corpus depth must be 0..4");
  static const char* const kNames[] = {"P", "Q", "R"};
  std::vector<std::vector<Formula>> level(static_cast<std::size_t>(spec.depth) + 1);
  for (int i = 0; i < spec.atoms; ++i) level[0].push_back(atom(kNames[i]));
  if (spec.has(CorpusConnective::False)) level[0].push_back(falsum());
  if (spec.has(CorpusConnective::True)) level[0].push_back(verum());
  const std::pair<CorpusConnective, Formula (*)(Formula, Formula)> binaries[] = {
      {CorpusConnective::And, conj}, {CorpusConnective::Or, disj}, {CorpusConnective::Imp, imp}};
  for (std::size_t k = 1; k < level.size(); ++k) {
    for (const auto& [c, make] : binaries) {
      if (!spec.has(c)) continue;
      for (std::size_t i = 0; i < k; ++i)
        for (const auto& l : level[i])
          for (const auto& r : level[k - 1 - i]) level[k].push_back(make(l, r));
    }
  }
  std::vector<Formula> out;
  for (auto& l : level) out.insert(out.end(), l.begin(), l.end());
  return out;
}

std::vector<CorpusConnective> parse_connectives(const std::string& csv) {
  std::vector<CorpusConnective> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t end = csv.find(',', start);
    if (end == std::string::npos) end = csv.size();
    std::string item = csv.substr(start, end - start);
    std::transform(item.begin(), item.end(), item.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (item == "and") out.push_back(CorpusConnective::And);
    else if (item == "or") out.push_back(CorpusConnective::Or);
    else if (item == "imp") out.push_back(CorpusConnective::Imp);
    else if (item == "false" || item == "falsum") out.push_back(CorpusConnective::False);
    else if (item == "true" || item == "verum") out.push_back(CorpusConnective::True);
    else throw std::invalid_argument("unknown connective '" + item + "'");
    start = end + 1;
  }
  return out;
}

TheoremViolation::TheoremViolation(const std::string& theorem, const Formula& witness)
    : std::runtime_error(theorem + ": " + print_formula(witness)), witness_(witness) {}

namespace {

[[noreturn]] void fail(const char* theorem, const Formula& g) { throw TheoremViolation(theorem, g); }

ReportRow report_row(const Formula& g, const ReportOptions& options, std::mutex& sink) {
  ReportRow row{g};
  row.classical_valid = truth_table_valid(g);

  if (auto p = g4ip_prove(g)) {
    row.ipc_provable = true;
    if (!row.classical_valid) fail("G4ip soundness: provable but not a tautology", g);
    Term t = star();
    try {
      t = check_proof(*p);
    } catch (const CheckError&) {
      fail("G4ip soundness: kernel rejected the elaborated proof", g);
    }
    if (!check_evidence(t, g)) fail("extraction soundness: realizer does not check", g);
  }

  row.negneg_provable = g4ip_provable(neg(neg(g)));
  if (row.negneg_provable != row.classical_valid) fail("Glivenko equivalence", g);

  row.countermodel_found = kripke_refutes(g, options.kripke_worlds).has_value();
  if (row.ipc_provable && row.countermodel_found) fail("Kripke countermodel to a G4ip theorem", g);

  if (row.classical_valid) {
    auto p = classical_pipeline(g);
    if (!p) fail("completeness: pipeline failed on a tautology", g);
    try {
      check_proof(*p);
    } catch (const CheckError&) {
      fail("completeness: kernel rejected the pipeline proof", g);
    }
    row.squash_provable = true;
    row.consistent = consistency_check(*p);
    if (!row.consistent) fail("consistency", g);
    row.uses_ex_falso = uses_rule(*p, Rule::FalseElim);
    if (options.on_squash_proof) {
      std::lock_guard lock(sink);
      options.on_squash_proof(*p);
    }
  }

  row.kolmogorov_check = kolmogorov_check(g);
  if (!row.kolmogorov_check) fail("Kolmogorov translation", g);
  row.godel_check = godel_check(g);
  if (!row.godel_check) fail("Goedel translation", g);
  return row;
}

}  // namespace

Report run_report(const CorpusSpec& spec, const ReportOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Formula> corpus = enumerate_formulas(spec);
  Report report{spec, {}};
  std::vector<std::optional<ReportRow>> rows(corpus.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex, sink_mutex;
  auto worker = [&] {
    while (!stop) {
      const std::size_t i = next++;
      if (i >= corpus.size()) return;
      try {
        rows[i] = report_row(corpus[i], options, sink_mutex);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  unsigned n = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(1, corpus.size())));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (error) std::rethrow_exception(error);

  report.rows.reserve(corpus.size());
  for (auto& r : rows) {
    const ReportRow& row = *r;
    report.tautologies += row.classical_valid;
    report.ipc_provable += row.ipc_provable;
    report.squash_provable += row.squash_provable;
    report.countermodels += row.countermodel_found;
    report.kripke_unresolved += !row.ipc_provable && !row.countermodel_found;
    report.rows.push_back(row);
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_json(const Report& r, int indent) {
  using nlohmann::json;
  json connectives = json::array();
  for (auto c : r.spec.connectives) {
    static const char* const kNames[] = {"And", "Or", "Imp", "False", "True"};
    connectives.push_back(kNames[static_cast<int>(c)]);
  }
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"formula", print_formula(row.formula)},
                    {"classical_valid", row.classical_valid},
                    {"ipc_provable", row.ipc_provable},
                    {"negneg_provable", row.negneg_provable},
                    {"squash_provable", row.squash_provable},
                    {"countermodel_found", row.countermodel_found},
                    {"kolmogorov_check", row.kolmogorov_check},
                    {"godel_check", row.godel_check},
                    {"consistent", row.consistent},
                    {"uses_ex_falso", row.uses_ex_falso}});
  }
  json doc = {
      {"spec", {{"atoms", r.spec.atoms}, {"depth", r.spec.depth}, {"connectives", connectives}}},
      {"counts",
       {{"formulas", r.rows.size()},
        {"tautologies", r.tautologies},
        {"ipc_provable", r.ipc_provable},
        {"squash_provable", r.squash_provable},
        {"countermodels", r.countermodels},
        {"kripke_unresolved", r.kripke_unresolved}}},
      {"seconds", r.seconds},
      {"rows", rows},
  };
  return doc.dump(indent);
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Proved: return "proved";
    case Verdict::Refuted: return "refuted";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

Exploration explore(const Formula& f, int depth) {
  if (!truth_table_valid(erase_squash(f))) return {f, Verdict::Refuted, std::nullopt};
  auto p = bounded_search(f, depth);
  return {f, p ? Verdict::Proved : Verdict::Unknown, std::move(p)};
}

std::vector<Formula> explore_questions() {
  std::vector<Formula> out;
  for (const char* text : {
           "(P => Q) => {P => Q}",
           "({P} => {Q}) => {P => Q}",
           "{P /\\ Q} => {P} /\\ {Q}",
           "{P} /\\ {Q} => {P /\\ Q}",
           "{P \\/ ~P}",
           "{P} => ~~P",
           "~~P => {P}",
           "{P} => P",
       })
    out.push_back(parse_formula(text));
  return out;
}

}  // namespace sqk
