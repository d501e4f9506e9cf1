#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

const char* cli_path() { return std::getenv("SCHEMELAB_CLI"); }

RunResult run_cli(const std::string& args) {
  RunResult res;
  const std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST_CASE("cli: check on the 3-cube emits a holding THM2 report") {
  if (!cli_path()) return;  // only meaningful under ctest
  RunResult r = run_cli("check --family hamming --d 3 --q 2 --format json");
  CHECK(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.output);
  CHECK(doc["scheme"]["label"] == "hamming(3,2)");
  bool thm2_holds = false;
  for (const auto& rep : doc["reports"])
    if (rep["check_id"] == "THM2" && rep["verdict"] == "holds") thm2_holds = true;
  CHECK(thm2_holds);
}

TEST_CASE("cli: johnson-cstar k=4 prints exact rationals and exits 0") {
  if (!cli_path()) return;
  RunResult text = run_cli("johnson-cstar --k 4");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("25/11") != std::string::npos);
  CHECK(text.output.find("2/1") != std::string::npos);
  CHECK(text.output.find("verdict: holds") != std::string::npos);

  RunResult json = run_cli("johnson-cstar --k 4 --format json");
  CHECK(json.exit_code == 0);
  auto doc = nlohmann::json::parse(json.output);
  CHECK(doc["reports"][0]["check_id"] == "JOHNSON_CSTAR");
  CHECK(doc["reports"][0]["witness"]["c_star_k_minus_1"] == "25/11");
  CHECK(doc["scheme"]["n"] == "1820");

  // k = 2 records the comparison without a verdict claim
  RunResult k2 = run_cli("johnson-cstar --k 2 --format json");
  CHECK(k2.exit_code == 0);
  auto doc2 = nlohmann::json::parse(k2.output);
  CHECK(doc2["reports"][0]["verdict"] == "not_applicable");
}

TEST_CASE("cli: usage and io errors exit 2") {
  if (!cli_path()) return;
  CHECK(run_cli("info --input nosuch.scheme").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);                    // missing subcommand
  CHECK(run_cli("info").exit_code == 2);                // no family, no input
  CHECK(run_cli("check --family cycle --m 2").exit_code == 2);
  CHECK(run_cli("modules --family cycle --m 5 --base-points sample").exit_code == 2);
  CHECK(run_cli("modules --family cycle --m 5 --base-points sample --assume-transitive")
            .exit_code == 0);
}

TEST_CASE("cli: numerical certificate failure exits 3") {
  if (!cli_path()) return;
  RunResult r = run_cli("modules --family complete --n 4 --tol-residual 1e-30");
  CHECK(r.exit_code == 3);
}

TEST_CASE("cli: gen writes the text format and info reads it back") {
  if (!cli_path()) return;
  const std::string path = "/tmp/schemelab_cli_gen_test.scheme";
  std::remove(path.c_str());
  CHECK(run_cli("gen --family cycle --m 5 --output " + path).exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string first_line;
  std::getline(in, first_line);
  CHECK(first_line == "5 2");

  RunResult info = run_cli("info --input " + path + " --format json");
  CHECK(info.exit_code == 0);
  auto doc = nlohmann::json::parse(info.output);
  CHECK(doc["scheme"]["n"] == 5);
  CHECK(doc["scheme"]["D"] == 2);
  std::remove(path.c_str());
}

TEST_CASE("cli: identical check invocations are byte-identical") {
  if (!cli_path()) return;
  const std::string args = "check --family hamming --d 3 --q 2 --format json --seed 0";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(!a.output.empty());
}

TEST_CASE("cli: spectra and modules subcommands run") {
  if (!cli_path()) return;
  RunResult spec = run_cli("spectra --family johnson --v 4 --k 2 --format json");
  CHECK(spec.exit_code == 0);
  auto doc = nlohmann::json::parse(spec.output);
  CHECK(doc["multiplicities"] == nlohmann::json({1, 3, 2}));

  RunResult mods = run_cli("modules --family complete --n 4 --format json");
  CHECK(mods.exit_code == 0);
  auto mdoc = nlohmann::json::parse(mods.output);
  CHECK(mdoc["dual_thin"] == true);
  CHECK(mdoc["base_points"].size() == 4);
}
