#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qalg/cli.hpp"

using namespace qalg;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = cmdDispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fx(const std::string& name) {
  return std::string(QALG_FIXTURES_DIR) + "/" + name;
}

// A quantum-plane presentation for the kind-gated subcommands.
std::string planeFile() {
  namespace fs = std::filesystem;
  fs::path p = fs::temp_directory_path() / "qalg-cli-test-plane.qalg";
  std::ofstream f(p);
  f << "algebra plane {\n"
       "  gen x1 deg 1;\n"
       "  gen x2 deg 1;\n"
       "  rel x2*x1 - q*x1*x2 = 0;\n"
       "  invert x1;\n"
       "  invert x2;\n"
       "}\n";
  return p.string();
}

}  // namespace

TEST_CASE("nf prints the normal form") {
  RunResult r = run({"nf", fx("ex4_1_weyl.qalg"), "x*y"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "q*y*x + 1\n");
  REQUIRE(run({"nf", fx("ex4_1_weyl.qalg"), "1"}).out == "1\n");
}

TEST_CASE("nf json output is structured and deterministic") {
  RunResult a = run({"nf", fx("ex4_1_weyl.qalg"), "x*y", "--json"});
  RunResult b = run({"nf", fx("ex4_1_weyl.qalg"), "x*y", "--json"});
  REQUIRE(a.code == 0);
  REQUIRE(a.out == b.out);
  Json j = Json::parse(a.out);
  REQUIRE(j["schema"] == 1);
  REQUIRE(j["command"] == "nf");
  REQUIRE(j["normal_form"] == "q*y*x + 1");
  // schema comes first so consumers can sniff the version cheaply.
  REQUIRE(a.out.find("\"schema\": 1") < a.out.find("\"command\""));
}

TEST_CASE("validate reports each named check and the verdict") {
  RunResult good = run({"validate", fx("ex2_4.qalg")});
  REQUIRE(good.code == 0);
  REQUIRE(good.out.find("gens: y(1) z(1) x(2)") != std::string::npos);
  REQUIRE(good.out.find("[ok] termination-certificate") != std::string::npos);
  REQUIRE(good.out.rfind("valid\n") == good.out.size() - 6);

  RunResult grade = run({"validate", fx("bad_bracket_grade.qalg")});
  REQUIRE(grade.code == 1);
  REQUIRE(grade.out.find("[FAIL] color-grade-compatibility") != std::string::npos);
  REQUIRE(grade.out.find("invalid") != std::string::npos);

  RunResult jac = run({"validate", fx("bad_jacobi.qalg")});
  REQUIRE(jac.code == 1);
  REQUIRE(jac.out.find("[FAIL] color-jacobi") != std::string::npos);

  RunResult term = run({"validate", fx("bad_termination.qalg")});
  REQUIRE(term.code == 1);
  REQUIRE(term.out.find("[FAIL] termination-certificate") != std::string::npos);
}

TEST_CASE("validate json mirrors the check list") {
  RunResult r = run({"validate", fx("bad_jacobi.qalg"), "--json"});
  REQUIRE(r.code == 1);
  Json j = Json::parse(r.out);
  REQUIRE(j["ok"] == false);
  bool sawJacobi = false;
  for (const auto& c : j["checks"])
    if (c["check"] == "color-jacobi") {
      sawJacobi = true;
      REQUIRE(c["pass"] == false);
    }
  REQUIRE(sawJacobi);
}

TEST_CASE("commands refuse to compute with an invalid presentation") {
  RunResult r = run({"nf", fx("bad_jacobi.qalg"), "x*y"});
  REQUIRE(r.code == 1);
  REQUIRE(r.err.find("ValidationFailed") != std::string::npos);
}

TEST_CASE("conj prints tables, applies to expressions, and rejects honestly") {
  RunResult table = run({"conj", fx("ex4_2_ore.qalg"), "y^2*z^-1"});
  REQUIRE(table.code == 0);
  REQUIRE(table.out == "y -> 1/q*y\nz -> 1/q^2*z\nx -> x + 2\n");

  RunResult image = run({"conj", fx("ex2_4.qalg"), "y", "x"});
  REQUIRE(image.code == 0);
  REQUIRE(image.out == "q*x + z + y + 1\n");

  RunResult bad = run({"conj", fx("ex4_1_weyl.qalg"), "y"});
  REQUIRE(bad.code == 1);
  REQUIRE(bad.err.find("NotStabilizing") != std::string::npos);

  RunResult notMono = run({"conj", fx("ex4_2_ore.qalg"), "y + z"});
  REQUIRE(notMono.code == 2);
  REQUIRE(notMono.err.find("expected a monomial") != std::string::npos);
}

TEST_CASE("monotone reports pi or a witness pair") {
  std::string plane = planeFile();
  RunResult yes = run({"monotone", plane, "x1*x2"});
  REQUIRE(yes.code == 0);
  REQUIRE(yes.out.find("monotone: yes") != std::string::npos);
  REQUIRE(yes.out.find("pi[x1] = q") != std::string::npos);
  REQUIRE(yes.out.find("extracted: x1*x2") != std::string::npos);

  RunResult no = run({"monotone", plane, "x1 + x2^2"});
  REQUIRE(no.code == 1);
  REQUIRE(no.out.find("monotone: no") != std::string::npos);
  REQUIRE(no.out.find("witness: ") != std::string::npos);
  REQUIRE(no.out.find("extracted: ") != std::string::npos);

  RunResult wrongKind = run({"monotone", fx("ex4_1_weyl.qalg"), "y"});
  REQUIRE(wrongKind.code == 1);
  REQUIRE(wrongKind.err.find("WrongKind") != std::string::npos);
}

TEST_CASE("central-factor splits monotone elements") {
  std::string plane = planeFile();
  RunResult r = run({"central-factor", plane, "2*x1*x2"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "delta: x1*x2\nfactor: 2\n");

  RunResult bad = run({"central-factor", plane, "x1 + x2"});
  REQUIRE(bad.code == 1);
  REQUIRE(bad.err.find("NotMonotone") != std::string::npos);
}

TEST_CASE("semiinv reports grade and weights on the color kind") {
  RunResult y = run({"semiinv", fx("ex2_6.qalg"), "y"});
  REQUIRE(y.code == 0);
  REQUIRE(y.out ==
          "homogeneous: yes\nsemi-invariant: yes\ngrade: (1, 0)\n"
          "weight[y] = 0\nweight[z] = 0\nweight[x] = 1\n");

  RunResult x = run({"semiinv", fx("ex2_6.qalg"), "x"});
  REQUIRE(x.code == 1);
  REQUIRE(x.out.find("semi-invariant: no") != std::string::npos);

  RunResult mixed = run({"semiinv", fx("ex2_6.qalg"), "y + x"});
  REQUIRE(mixed.code == 1);
  REQUIRE(mixed.out.find("homogeneous: no") != std::string::npos);

  RunResult wrongKind = run({"semiinv", fx("ex4_1_weyl.qalg"), "y"});
  REQUIRE(wrongKind.code == 1);
}

TEST_CASE("der-solve prints witnesses, kernels, and bounded negatives") {
  RunResult found = run({"der-solve", fx("ex4_4.qalg"), "--box", "1"});
  REQUIRE(found.code == 0);
  REQUIRE(found.out ==
          "box: 1\nwitness: -(q/(q^2 - 1))*y^-1*z\nkernel[0]: y^-1*z^-1\n");

  RunResult none = run({"der-solve", fx("ex4_3.qalg"), "--box", "2"});
  REQUIRE(none.code == 1);
  REQUIRE(none.out == "box: 2\nno witness in box\n");

  // Default box is 2.
  RunResult dflt = run({"der-solve", fx("ex4_1_weyl.qalg")});
  REQUIRE(dflt.code == 0);
  REQUIRE(dflt.out.find("box: 2") != std::string::npos);

  REQUIRE(run({"der-solve", fx("ex4_4.qalg"), "--box", "0"}).code == 2);
  RunResult big = run({"der-solve", fx("ex4_4.qalg"), "--box", "75"});
  REQUIRE(big.code == 1);
  REQUIRE(big.err.find("BoxTooLarge") != std::string::npos);
}

TEST_CASE("thm32 exposes the closure checks by name") {
  RunResult acc = run({"thm32", fx("ex4_3.qalg"), "--case", "1", "--w", "z^2"});
  REQUIRE(acc.code == 0);
  REQUIRE(acc.out.find("[ok] w_inv_tau_w = q^2") != std::string::npos);
  REQUIRE(acc.out.find("accepted") != std::string::npos);
  REQUIRE(acc.out.find("x -> q^2*x") != std::string::npos);

  RunResult rej = run({"thm32", fx("ex4_3.qalg"), "--case", "1", "--w", "y"});
  REQUIRE(rej.code == 1);
  REQUIRE(rej.out.find("[FAIL] w_inv_delta_w = y^-1*z") != std::string::npos);

  RunResult c2 = run({"thm32", fx("ex4_1_weyl.qalg"), "--case", "2", "--w", "y^3", "--m", "3"});
  REQUIRE(c2.code == 0);
  REQUIRE(c2.out.find("x -> q^3*x") != std::string::npos);

  // Usage: case/m pairing is validated.
  REQUIRE(run({"thm32", fx("ex4_1_weyl.qalg"), "--case", "1", "--w", "y", "--m", "1"}).code == 2);
  REQUIRE(run({"thm32", fx("ex4_1_weyl.qalg"), "--case", "2", "--w", "y"}).code == 2);
  REQUIRE(run({"thm32", fx("ex4_1_weyl.qalg"), "--case", "3", "--w", "y"}).code == 2);

  // Case 2 on an algebra with no witness in the box cannot start.
  RunResult noc = run({"thm32", fx("ex4_3.qalg"), "--case", "2", "--w", "z", "--m", "1"});
  REQUIRE(noc.code == 1);
  REQUIRE(noc.err.find("UnverifiedWitness") != std::string::npos);
}

TEST_CASE("thm32 json carries closure booleans under their contract names") {
  RunResult r =
      run({"thm32", fx("ex4_4.qalg"), "--case", "2", "--w", "y*z", "--m", "1", "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  REQUIRE(j["closures"]["w_inv_tau_w"] == true);
  REQUIRE(j["closures"]["tau_w_inv_w"] == true);
  REQUIRE(j["closures"]["c_closure"] == true);
  REQUIRE(j["accepted"] == true);
  REQUIRE(j["images"]["x"] == "x");

  RunResult r1 = run({"thm32", fx("ex4_3.qalg"), "--case", "1", "--w", "y", "--json"});
  Json j1 = Json::parse(r1.out);
  REQUIRE(j1["closures"]["w_inv_delta_w"] == false);
  REQUIRE(j1["closure_values"]["w_inv_delta_w"] == "y^-1*z");
  REQUIRE(j1["images"].is_null());
}

TEST_CASE("verify answers and validates the map first") {
  RunResult yes = run({"verify", fx("ex4_1_weyl.qalg"), "--a", "x*y - y*x", "--b", "1",
                       "--sigma", "x=q*x", "--sigma", "y=q^-1*y"});
  REQUIRE(yes.code == 0);
  REQUIRE(yes.out == "inducing: true\n");

  RunResult no = run({"verify", fx("ex4_1_weyl.qalg"), "--a", "1", "--b", "y", "--sigma",
                      "x=q*x", "--sigma", "y=q^-1*y"});
  REQUIRE(no.code == 1);
  REQUIRE(no.out == "inducing: false\n");

  RunResult badMap = run({"verify", fx("ex4_1_weyl.qalg"), "--a", "1", "--b", "1", "--sigma",
                          "x=2*x"});
  REQUIRE(badMap.code == 1);
  REQUIRE(badMap.err.find("breaks the x,y relation") != std::string::npos);

  REQUIRE(run({"verify", fx("ex4_1_weyl.qalg"), "--a", "1", "--b", "1", "--sigma", "w=q*x"})
              .code == 2);
  REQUIRE(run({"verify", fx("ex4_1_weyl.qalg"), "--a", "1", "--b", "1", "--sigma", "nopair"})
              .code == 2);
}

TEST_CASE("order reports finite orders and infinite ones") {
  RunResult inf = run({"order", fx("ex4_1_weyl.qalg"), "--sigma", "x=q*x", "--sigma",
                       "y=q^-1*y"});
  REQUIRE(inf.code == 0);
  REQUIRE(inf.out == "order: infinite\n");

  RunResult two = run({"order", fx("ex4_1_weyl.qalg"), "--sigma", "x=-x", "--sigma", "y=-y"});
  REQUIRE(two.code == 0);
  REQUIRE(two.out == "order: 2\n");

  RunResult one = run({"order", fx("ex4_1_weyl.qalg"), "--sigma", "x=x"});
  REQUIRE(one.out == "order: 1\n");

  RunResult j = run({"order", fx("ex4_1_weyl.qalg"), "--sigma", "x=q*x", "--sigma", "y=q^-1*y",
                     "--json"});
  REQUIRE(Json::parse(j.out)["order"] == "infinite");
}

TEST_CASE("usage errors exit with code 2") {
  REQUIRE(run({}).code == 2);
  REQUIRE(run({"frobnicate"}).code == 2);
  REQUIRE(run({"nf"}).code == 2);
  REQUIRE(run({"nf", fx("ex4_1_weyl.qalg")}).code == 2);
  REQUIRE(run({"nf", "no-such-file.qalg", "x"}).code == 2);
  RunResult help = run({"--help"});
  REQUIRE(help.code == 0);
  REQUIRE(help.out.find("nf") != std::string::npos);
}

TEST_CASE("expression syntax errors exit with code 2") {
  REQUIRE(run({"nf", fx("ex4_1_weyl.qalg"), "x*"}).code == 2);
  REQUIRE(run({"nf", fx("ex4_1_weyl.qalg"), "nope"}).code == 2);
}

TEST_CASE("json errors are structured") {
  RunResult r = run({"conj", fx("ex4_1_weyl.qalg"), "y", "--json"});
  REQUIRE(r.code == 1);
  Json j = Json::parse(r.out);
  REQUIRE(j["schema"] == 1);
  REQUIRE(j["error"]["code"] == "NotStabilizing");
  REQUIRE(r.err.empty());
}

TEST_CASE("step budget is controlled by the environment") {
  setenv("QALG_STEP_BUDGET", "1", 1);
  RunResult r = run({"nf", fx("ex4_1_weyl.qalg"), "x*y*x*y"});
  unsetenv("QALG_STEP_BUDGET");
  REQUIRE(r.code == 1);
  REQUIRE(r.err.find("StepBudgetExceeded") != std::string::npos);
  // And the default budget handles the same input.
  REQUIRE(run({"nf", fx("ex4_1_weyl.qalg"), "x*y*x*y"}).code == 0);
}

TEST_CASE("fixtures run supports filters") {
  RunResult one = run({"fixtures", "run", "Ex4.1"});
  REQUIRE(one.code == 0);
  REQUIRE(one.out.find("[PASS] Ex4.1/relation-nf") != std::string::npos);
  REQUIRE(one.out.find("Ex4.4") == std::string::npos);
  REQUIRE(one.out.find(" 0 failed") != std::string::npos);

  REQUIRE(run({"fixtures", "run", "Ex9.9"}).code == 2);
  REQUIRE(run({"fixtures"}).code == 2);
}

TEST_CASE("the installed binary wires argv to the dispatcher") {
  std::string cmd = std::string(QALG_BIN) + " nf " + fx("ex4_1_weyl.qalg") + " 'x*y' 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[256] = {0};
  std::string out;
  while (fgets(buf, sizeof buf, p)) out += buf;
  int status = pclose(p);
  REQUIRE(WEXITSTATUS(status) == 0);
  REQUIRE(out == "q*y*x + 1\n");

  std::string bad = std::string(QALG_BIN) + " conj " + fx("ex4_1_weyl.qalg") + " y 2>/dev/null";
  FILE* p2 = popen(bad.c_str(), "r");
  REQUIRE(p2 != nullptr);
  while (fgets(buf, sizeof buf, p2)) {
  }
  REQUIRE(WEXITSTATUS(pclose(p2)) == 1);
}
