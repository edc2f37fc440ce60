#include "sqk/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sqk/evidence.hpp"
#include "sqk/oracle.hpp"
#include "sqk/proofkernel.hpp"
#include "sqk/prover.hpp"
#include "sqk/syntax.hpp"
#include "sqk/translate.hpp"

namespace sqk {

namespace {

using nlohmann::json;

constexpr const char* kGrammar = R"(Formula syntax (loosest first):
  A => B          implication, right associative
  A \/ B          disjunction, left associative
  A /\ B          conjunction, left associative
  ~A  {A}  (A)    negation, squash, grouping
  forall x. A     exists x. A
  P  P(x)  False  True
Evidence terms:
  x  lam(x.t)  f(a)  ap(f; a)  pair(a; b)  fst(t)  snd(t)  inl(t)  inr(t)
  case(s; x.l; y.r)  star  any(t)
Exit status: 0 success, 1 negative verdict, 2 usage or parse error.
Environment: SQK_FUEL sets the default normalization fuel (10000).
)";

std::size_t default_fuel() {
  if (const char* env = std::getenv("SQK_FUEL")) {
    try {
      return std::stoul(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("SQK_FUEL", "not a number: " + std::string(env));
    }
  }
  return 10000;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--file", "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Squash-modality proof kernel and toolchain", "sqk"};
    app.footer(kGrammar);
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_flag("--json", json_, "Machine-readable output");
    app.add_option("--file", file_, "Read the formula or term from a file");
    build(app);

    std::vector<const char*> argv{"sqk"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n\n" << app.help();
      return kExitUsage;
    }

    try {
      return action_();
    } catch (const ParseError& e) {
      err_ << "parse error " << e.what() << "\n";
      return kExitUsage;
    } catch (const CLI::Error& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::invalid_argument& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const TheoremViolation& e) {
      err_ << "theorem violation: " << e.what() << "\n";
      return kExitNegative;
    }
  }

 private:
  std::string input(const std::string& positional, const char* what) const {
    if (!file_.empty()) return slurp(file_);
    if (positional.empty()) throw CLI::ValidationError(what, std::string("missing ") + what);
    return positional;
  }

  Formula formula() const { return parse_formula(input(text_, "formula")); }

  void emit(const json& j) { out_ << j.dump(2) << "\n"; }

  int verdict(bool ok, const json& j, const std::string& line) {
    if (json_) emit(j);
    else out_ << line << "\n";
    return ok ? kExitOk : kExitNegative;
  }

  CLI::App* command(CLI::App& app, const char* name, const char* help, std::function<int()> fn,
                    bool takes_formula = true) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (takes_formula) sub->add_option("formula", text_, "Formula (or use --file)");
    sub->callback([this, fn] { action_ = fn; });
    return sub;
  }

  void build(CLI::App& app) {
    command(app, "parse", "Parse a formula and show its syntax tree", [this] {
      Formula f = formula();
      json j = {{"formula", print_formula(f)}, {"sexp", print_formula_sexp(f)},
                {"size", f.size()}, {"depth", depth(f)}};
      return verdict(true, j, print_formula_sexp(f));
    });

    command(app, "fmt", "Print a formula in canonical form", [this] {
      Formula f = formula();
      return verdict(true, {{"formula", print_formula(f)}}, print_formula(f));
    });

    auto* tr = command(app, "translate", "Apply a formula translation", [this] {
      Formula f = formula();
      Formula t = translate(parse_translation_mode(mode_), f);
      return verdict(true, {{"mode", mode_}, {"input", print_formula(f)}, {"output", print_formula(t)}},
                     print_formula(t));
    });
    tr->add_option("--mode", mode_, "kolmogorov | godel | kuroda | squash-top | squash-sub | erase")
        ->required();

    CLI::App* oracle = app.add_subcommand("oracle", "Semantic oracles");
    oracle->require_subcommand(1, 1);
    command(*oracle, "taut", "Truth-table validity", [this] {
      Formula f = formula();
      auto v = falsifying_valuation(f);
      json j = {{"formula", print_formula(f)}, {"valid", !v}};
      if (v) j["valuation"] = *v;
      return verdict(!v, j, v ? "invalid: " + describe(*v) : "valid");
    });
    auto* fol = command(*oracle, "fol", "Validity in all finite models up to a domain size", [this] {
      Formula f = formula();
      auto m = finite_countermodel(f, max_domain_);
      json j = {{"formula", print_formula(f)}, {"valid", !m}, {"max_domain", max_domain_}};
      if (m) j["countermodel"] = describe(*m);
      return verdict(!m, j,
                     m ? "invalid: " + describe(*m)
                       : "valid up to domain size " + std::to_string(max_domain_));
    });
    fol->add_option("--max-domain", max_domain_, "Largest domain size")->check(CLI::Range(1, 6));
    auto* inh = command(*oracle, "inhabit", "Evidence type and inhabitant under a finite model", [this] {
      Formula f = formula();
      EvidenceModel m = parse_evidence_model(model_);
      FiniteType t = evidence_type(f, m);
      auto term = inhabitation_search(f, m, search_depth_);
      json j = {{"formula", print_formula(f)}, {"type", print_finite_type(t)},
                {"inhabited", t.inhabited()}};
      if (term) j["inhabitant"] = print_term(*term);
      std::string line = t.inhabited()
                             ? (term ? "inhabited: " + print_term(*term)
                                     : "inhabited (no term within depth " +
                                           std::to_string(search_depth_) + ")")
                             : "empty: " + print_finite_type(t);
      return verdict(t.inhabited(), j, line);
    });
    inh->add_option("--model", model_, "Letter assignment, e.g. P=Unit,Q=Void")->required();
    inh->add_option("--depth", search_depth_, "Term depth bound")->check(CLI::Range(1, 64));
    auto* kr = command(*oracle, "kripke", "Search for a Kripke countermodel", [this] {
      Formula f = formula();
      auto k = kripke_refutes(f, max_worlds_);
      json j = {{"formula", print_formula(f)}, {"countermodel_found", k.has_value()},
                {"max_worlds", max_worlds_}};
      if (k) j["countermodel"] = describe(*k);
      return verdict(!k, j,
                     k ? "countermodel: " + describe(*k)
                       : "no countermodel up to " + std::to_string(max_worlds_) + " worlds");
    });
    kr->add_option("--max-worlds", max_worlds_, "Largest model size")->check(CLI::Range(1, 5));

    auto* prove = command(app, "prove", "Prove a propositional formula", [this] {
      Formula f = formula();
      std::optional<ProofNode> p;
      std::string failure;
      if (logic_ == "ipc") {
        p = g4ip_prove(f);
        failure = "not provable";
      } else {
        p = classical_pipeline(f);
        if (!p) failure = "not a tautology: " + describe(*falsifying_valuation(f));
      }
      if (!p) return verdict(false, {{"formula", print_formula(f)}, {"proved", false}}, failure);
      Term r = check_proof(*p);
      if (json_) {
        emit({{"formula", print_formula(f)}, {"proved", true}, {"proof", print_proof(*p)},
              {"realizer", print_term(r)}});
      } else {
        out_ << print_proof(*p) << "\nrealizer: " << print_term(r) << "\n";
      }
      return kExitOk;
    });
    prove->add_option("--logic", logic_, "ipc | classical")
        ->check(CLI::IsMember({"ipc", "classical"}));

    auto* check = command(app, "check", "Check a proof file", [this] {
      ProofNode p = parse_proof(slurp(proof_file_));
      try {
        Term r = check_proof(p);
        return verdict(true, {{"accepted", true}, {"realizer", print_term(r)}}, print_term(r));
      } catch (const CheckError& e) {
        return verdict(false,
                       {{"accepted", false}, {"path", e.path_string()},
                        {"rule", std::string(rule_name(e.rule()))}, {"reason", e.what()}},
                       std::string("rejected at ") + e.what());
      }
    }, false);
    check->add_option("proof", proof_file_, "Proof file")->required();

    auto* eval = command(app, "eval", "Normalize an evidence term", [this] {
      Term t = parse_term(input(text_, "term"));
      const std::size_t fuel = fuel_ ? *fuel_ : default_fuel();
      auto n = normalize(t, fuel);
      json j = {{"term", print_term(t)}, {"fuel", fuel}, {"normalized", n.has_value()}};
      if (n) j["normal_form"] = print_term(*n);
      return verdict(n.has_value(), j, n ? print_term(*n) : "fuel exhausted");
    }, false);
    eval->add_option("term", text_, "Evidence term (or use --file)");
    eval->add_option("--fuel", fuel_, "Reduction steps before giving up");

    auto* report = command(app, "report", "Exhaustive corpus sweep", [this] {
      CorpusSpec spec;
      spec.atoms = atoms_;
      spec.depth = corpus_depth_;
      if (!connectives_.empty()) spec.connectives = parse_connectives(connectives_);
      ReportOptions options;
      options.threads = threads_;
      Report r = run_report(spec, options);
      if (!out_path_.empty()) {
        std::ofstream f(out_path_);
        if (!f) throw CLI::ValidationError("--out", "cannot write " + out_path_);
        f << report_json(r) << "\n";
      }
      if (json_) {
        out_ << report_json(r) << "\n";
      } else {
        out_ << "formulas:          " << r.rows.size() << "\n"
             << "tautologies:       " << r.tautologies << "\n"
             << "ipc provable:      " << r.ipc_provable << "\n"
             << "squash provable:   " << r.squash_provable << "\n"
             << "countermodels:     " << r.countermodels << "\n"
             << "kripke unresolved: " << r.kripke_unresolved << "\n"
             << "violations:        0\n"
             << "seconds:           " << r.seconds << "\n";
      }
      return kExitOk;
    }, false);
    report->add_option("--atoms", atoms_, "Number of atoms (1-3)")->check(CLI::Range(1, 3));
    report->add_option("--depth", corpus_depth_, "Binary connectives per formula (0-4)")
        ->check(CLI::Range(0, 4));
    report->add_option("--connectives", connectives_, "Comma list of and,or,imp,false,true");
    report->add_option("--threads", threads_, "Worker threads (0: all cores)");
    report->add_option("--out", out_path_, "Write the JSON report to a file");

    auto* ex = command(app, "explore", "Run the mixed squash questions through bounded search", [this] {
      std::vector<Formula> questions;
      if (!text_.empty() || !file_.empty()) questions.push_back(formula());
      else questions = explore_questions();
      json rows = json::array();
      bool all_proved = true;
      for (const auto& q : questions) {
        Exploration e = explore(q, explore_depth_);
        all_proved = all_proved && e.verdict == Verdict::Proved;
        json row = {{"formula", print_formula(q)}, {"verdict", std::string(verdict_name(e.verdict))}};
        if (e.proof) row["proof_size"] = proof_size(*e.proof);
        rows.push_back(row);
        if (!json_) {
          out_ << verdict_name(e.verdict) << "\t" << print_formula(q);
          if (e.proof) out_ << "\t(" << proof_size(*e.proof) << " steps)";
          out_ << "\n";
          if (e.proof && show_proofs_) out_ << print_proof(*e.proof) << "\n";
        }
      }
      if (json_) emit({{"depth", explore_depth_}, {"results", rows}});
      return questions.size() == 1 && !all_proved ? kExitNegative : kExitOk;
    });
    ex->add_option("--depth", explore_depth_, "Search depth")->check(CLI::Range(1, 16));
    ex->add_flag("--proofs", show_proofs_, "Print the proofs found");
  }

  std::ostream& out_;
  std::ostream& err_;
  std::function<int()> action_;

  bool json_ = false;
  std::string file_;
  std::string text_;
  std::string mode_;
  int max_domain_ = 3;
  std::string model_;
  int search_depth_ = 8;
  int max_worlds_ = 4;
  std::string logic_ = "ipc";
  std::string proof_file_;
  std::optional<std::size_t> fuel_;
  int atoms_ = 2;
  int corpus_depth_ = 3;
  std::string connectives_;
  int threads_ = 0;
  std::string out_path_;
  int explore_depth_ = 8;
  bool show_proofs_ = false;
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(args);
}

}  // namespace sqk
