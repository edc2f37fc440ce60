#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sqk/cli.hpp"
#include "support.hpp"

using namespace sqk;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = dispatch(args, out, err);
  return {status, out.str(), err.str()};
}

std::string last_line(const std::string& s) {
  std::string t = s;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  auto pos = t.rfind('\n');
  return pos == std::string::npos ? t : t.substr(pos + 1);
}

}  // namespace

TEST_CASE("golden: oracle taut") {
  Run r = run({"oracle", "taut", "P => Q"});
  CHECK(r.status == 1);
  CHECK(r.out == "invalid: P=true Q=false\n");
  r = run({"oracle", "taut", "P \\/ ~P"});
  CHECK(r.status == 0);
  CHECK(r.out == "valid\n");
}

TEST_CASE("golden: eval") {
  Run r = run({"eval", "ap(lam(x.x); star)", "--fuel", "10"});
  CHECK(r.status == 0);
  CHECK(r.out == "star\n");
  r = run({"eval", "ap(lam(x.x(x)); lam(x.x(x)))", "--fuel", "50"});
  CHECK(r.status == 1);
  CHECK(r.out == "fuel exhausted\n");
}

TEST_CASE("golden: classical proof of excluded middle") {
  Run r = run({"prove", "--logic", "classical", "P \\/ ~P"});
  CHECK(r.status == 0);
  CHECK(r.out.rfind("(ClassicalIntro (goal (|- \"{P \\/ ~P}\"))", 0) == 0);
  CHECK(last_line(r.out) == "realizer: star");
}

TEST_CASE("prove: negative verdicts") {
  Run r = run({"prove", "--logic", "ipc", "((P => Q) => P) => P"});
  CHECK(r.status == 1);
  CHECK(r.out == "not provable\n");
  r = run({"prove", "--logic", "classical", "P /\\ ~P"});
  CHECK(r.status == 1);
  CHECK(r.out == "not a tautology: P=true\n");
  r = run({"prove", "P => P"});
  CHECK(r.status == 0);
  CHECK(last_line(r.out) == "realizer: lam(h1.h1)");
}

TEST_CASE("usage and parse errors exit 2") {
  CHECK(run({}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"fmt", "P =>"}).status == 2);
  CHECK(run({"prove", "--logic", "modal", "P"}).status == 2);
  CHECK(run({"fmt", "P", "--bogus"}).status == 2);
  CHECK(run({"eval", "lam(x"}).status == 2);
  CHECK(run({"translate", "P"}).status == 2);
  CHECK(run({"translate", "--mode", "kolmogorov", "forall x. P(x)"}).status == 2);
  CHECK(run({"check", "/nonexistent/file.proof"}).status == 2);
  Run r = run({"oracle"});
  CHECK(r.status == 2);
  CHECK(r.err.find("Formula syntax") != std::string::npos);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("parse, fmt and translate") {
  CHECK(run({"parse", "~A => {B}"}).out == "(=> (~ A) ({} B))\n");
  CHECK(run({"fmt", "((A) => (B => C))"}).out == "A => B => C\n");
  CHECK(run({"translate", "--mode", "kolmogorov", "P \\/ Q"}).out == "~~(~~P \\/ ~~Q)\n");
  CHECK(run({"translate", "--mode", "godel", "P \\/ Q"}).out == "~(~P /\\ ~Q)\n");
  CHECK(run({"translate", "--mode", "squash-sub", "forall x. P(x) \\/ ~P(x)"}).out ==
        "forall x. {P(x) \\/ ~P(x)}\n");
}

TEST_CASE("oracles") {
  Run r = run({"oracle", "kripke", "P \\/ ~P", "--max-worlds", "2"});
  CHECK(r.status == 1);
  CHECK(r.out.rfind("countermodel: ", 0) == 0);
  CHECK(run({"oracle", "kripke", "~~(P \\/ ~P)"}).status == 0);
  CHECK(run({"oracle", "fol", "forall x. P(x) \\/ ~P(x)"}).out == "valid up to domain size 3\n");
  CHECK(run({"oracle", "fol", "(exists x. P(x)) => forall x. P(x)"}).status == 1);
  r = run({"oracle", "inhabit", "P \\/ ~P", "--model", "P=Unit"});
  CHECK(r.status == 0);
  CHECK(r.out == "inhabited: inl(star)\n");
  CHECK(run({"oracle", "inhabit", "P", "--model", "P=Void"}).status == 1);
}

TEST_CASE("check proof files") {
  Run r = run({"check", test::data_path("negneg_to_squash.proof")});
  CHECK(r.status == 0);
  CHECK(r.out == "lam(f.star)\n");
  r = run({"check", test::data_path("squash_to_plain.proof")});
  CHECK(r.status == 1);
  CHECK(r.out.rfind("rejected at root (SquashElim)", 0) == 0);
  r = run({"--json", "check", test::data_path("squash_to_plain.proof")});
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["accepted"] == false);
  CHECK(doc["path"] == "root");
}

TEST_CASE("formula from file") {
  auto path = std::filesystem::temp_directory_path() / "sqk_cli_formula.txt";
  {
    std::ofstream f(path);
    f << "P \\/ ~P\n";
  }
  Run r = run({"oracle", "taut", "--file", path.string()});
  CHECK(r.status == 0);
  std::filesystem::remove(path);
}

TEST_CASE("json output") {
  auto doc = nlohmann::json::parse(run({"--json", "oracle", "taut", "P => Q"}).out);
  CHECK(doc["valid"] == false);
  CHECK(doc["valuation"]["P"] == true);
  doc = nlohmann::json::parse(run({"eval", "--json", "star"}).out);
  CHECK(doc["normal_form"] == "star");
  doc = nlohmann::json::parse(run({"--json", "prove", "--logic", "classical", "P \\/ ~P"}).out);
  CHECK(doc["realizer"] == "star");
}

TEST_CASE("report and explore") {
  auto path = std::filesystem::temp_directory_path() / "sqk_cli_report.json";
  Run r = run({"report", "--atoms", "1", "--depth", "2", "--out", path.string()});
  CHECK(r.status == 0);
  CHECK(r.out.find("formulas:          516") != std::string::npos);
  auto doc = nlohmann::json::parse(test::read_file(path.string()));
  CHECK(doc["rows"].size() == 516);
  const auto& row = doc["rows"][0];
  for (const char* key : {"classical_valid", "ipc_provable", "negneg_provable", "squash_provable",
                          "countermodel_found"})
    CHECK(row[key].is_boolean());
  std::filesystem::remove(path);
  CHECK(run({"report", "--atoms", "5"}).status == 2);

  r = run({"explore"});
  CHECK(r.status == 0);
  CHECK(r.out.find("proved\t(P => Q) => {P => Q}") != std::string::npos);
  CHECK(run({"explore", "{P} => P"}).status == 1);
}

TEST_CASE("fuel from the environment") {
  ::setenv("SQK_FUEL", "1", 1);
  CHECK(run({"eval", "ap(lam(x.x); ap(lam(y.y); star))"}).status == 1);
  CHECK(run({"eval", "ap(lam(x.x); ap(lam(y.y); star))", "--fuel", "2"}).status == 0);
  ::setenv("SQK_FUEL", "junk", 1);
  CHECK(run({"eval", "star"}).status == 2);
  ::unsetenv("SQK_FUEL");
  CHECK(run({"eval", "ap(lam(x.x); ap(lam(y.y); star))"}).status == 0);
}
