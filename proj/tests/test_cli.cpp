#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string out_path = "cli_out.txt";
  std::string cmd =
      std::string(WEBLIN_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream f(out_path);
  std::stringstream ss;
  ss << f.rdbuf();
  return {WEXITSTATUS(status), ss.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

const char* kExample = "\"(x1+x2)*exp(-x1)\"";

}  // namespace

TEST_CASE("analyze matches the golden report and is deterministic") {
  RunResult r = run(std::string("analyze --f ") + kExample +
                    " --samples 10 --json cli_rep1.json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("LINEARIZABLE") != std::string::npos);
  CHECK(slurp("cli_rep1.json") ==
        slurp(std::string(WEBLIN_GOLDEN_DIR) + "/analyze_example.json"));

  RunResult r2 = run(std::string("analyze --f ") + kExample +
                     " --samples 10 --json cli_rep2.json");
  CHECK(r2.exit_code == 0);
  CHECK(slurp("cli_rep1.json") == slurp("cli_rep2.json"));
}

TEST_CASE("analyze classifies a parallelizable web") {
  RunResult r = run("analyze --f \"x1+x2\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PARALLELIZABLE") != std::string::npos);
}

TEST_CASE("degenerate and malformed inputs use the exit-code contract") {
  CHECK(run("analyze --f \"x1\"").exit_code == 3);
  CHECK(run("analyze --f \"x1+\"").exit_code == 2);
  CHECK(run("analyze --f \"x1*x2\" --box 3,2,2,3").exit_code == 2);
  CHECK(run("analyze --f \"x1*x2\" --samples 5").exit_code == 2);
  CHECK(run("analyze --f \"x1*x2\" --param a").exit_code == 2);
  CHECK(run("analyze").exit_code == 2);
}

TEST_CASE("verify accepts the exponential family candidate") {
  write_file("cli_cand.json", R"json({
    "s": -1,
    "t": "(-1+x1+x2)*exp(-x1)/((x1+x2)*exp(-x1)+a*x2+b)",
    "z": "(exp(-x1)+a-x1*a+b)/(((x1+x2)*exp(-x1)+a*x2+b)*(x1+x2-1))",
    "params": {"a": 1, "b": 1}
  })json");
  RunResult r = run(std::string("verify --f ") + kExample +
                    " --candidate cli_cand.json --json cli_vrep.json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("LINEARIZATION") != std::string::npos);
  CHECK(slurp("cli_vrep.json").find("\"verdict\": \"LINEARIZATION\"") !=
        std::string::npos);
}

TEST_CASE("verify rejects a wrong candidate but still reports") {
  write_file("cli_bad.json", R"({"s": -1, "t": 1, "z": 0})");
  RunResult r =
      run(std::string("verify --f ") + kExample + " --candidate cli_bad.json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("REJECTED") != std::string::npos);
}

TEST_CASE("verify flags broken candidate files as input errors") {
  write_file("cli_missing.json", R"({"s": -1, "t": "0"})");
  CHECK(run(std::string("verify --f ") + kExample +
            " --candidate cli_missing.json")
            .exit_code == 2);
  write_file("cli_syntax.json", "{not json");
  CHECK(run(std::string("verify --f ") + kExample +
            " --candidate cli_syntax.json")
            .exit_code == 2);
  CHECK(run(std::string("verify --f ") + kExample +
            " --candidate cli_nonexistent.json")
            .exit_code == 2);
  // unbound parameter in the candidate expressions
  write_file("cli_unbound.json", R"({"s": -1, "t": "q*x1", "z": "0"})");
  CHECK(run(std::string("verify --f ") + kExample +
            " --candidate cli_unbound.json")
            .exit_code == 2);
}
