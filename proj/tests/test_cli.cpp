#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;

const std::string kCli = LUCKCHECK_CLI_PATH;
const std::string kDataDir = LUCKCHECK_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  static int counter = 0;
  const fs::path out_path =
      fs::temp_directory_path() / ("luckcheck_cli_test_" + std::to_string(counter++) + ".out");
  const std::string command = kCli + " " + args + " > " + out_path.string() + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.output = buf.str();
  fs::remove(out_path);
  return result;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("screen on the bundled fixture flags one gambler and exits 2") {
  const auto result = run("screen --catalog " + kDataDir + "/play4_catalog.csv --claims " +
                          kDataDir + "/fixture_claims.csv");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("louis_johnson") != std::string::npos);
  CHECK(result.output.find("implausible") != std::string::npos);
  CHECK(result.output.find("hollywood_h") != std::string::npos);
  CHECK(result.output.find("plausibly-lucky") != std::string::npos);
}

TEST_CASE("screen output is identical across invocations") {
  const std::string args = "screen --catalog " + kDataDir + "/play4_catalog.csv --claims " +
                           kDataDir + "/fixture_claims.csv --format tree";
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.exit_code == 2);
  CHECK(a.output == b.output);
}

TEST_CASE("screen tree output is machine-readable") {
  const auto result = run("screen --catalog " + kDataDir + "/play4_catalog.csv --claims " +
                          kDataDir + "/fixture_claims.csv --format tree");
  const auto doc = nlohmann::json::parse(result.output);
  CHECK(doc["summary"]["implausible"] == 1);
  CHECK(doc["summary"]["plausibly_lucky"] == 1);
  CHECK(doc["config"]["eps"] == 5e-14);
  CHECK(doc["gamblers"][0]["gambler_id"] == "louis_johnson");
  CHECK(doc["gamblers"][0]["verdict"] == "implausible");
}

TEST_CASE("screen with an empty claims file is a clean run") {
  const auto claims = write_temp("empty_claims.csv",
                                 "gambler_id,claim_date,bet_id,prize_amount,draw_id,units\n");
  const auto result = run("screen --claims " + claims.string());
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("0 gambler(s)") != std::string::npos);
  fs::remove(claims);
}

TEST_CASE("screen with a missing file is an input error") {
  const auto result = run("screen --catalog /nonexistent/catalog.csv --claims " + kDataDir +
                          "/fixture_claims.csv");
  CHECK(result.exit_code == 1);
  const auto result2 = run("screen --claims /nonexistent/claims.csv");
  CHECK(result2.exit_code == 1);
}

TEST_CASE("screen writes the report to a file with --out") {
  const fs::path out = fs::temp_directory_path() / "luckcheck_report.json";
  const auto result = run("screen --catalog " + kDataDir + "/play4_catalog.csv --claims " +
                          kDataDir + "/fixture_claims.csv --format tree --out " + out.string());
  CHECK(result.exit_code == 2);
  std::ifstream in(out);
  REQUIRE(in.good());
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["summary"]["gamblers"] == 2);
  fs::remove(out);
}

TEST_CASE("min-spend on the 57-win record") {
  const auto result = run("min-spend --bet 1:1e-4:57 --eps 5e-14");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("174005") != std::string::npos);
}

TEST_CASE("min-spend with zero wins costs nothing") {
  const auto result = run("min-spend --bet 1:1e-4:0");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("$0.00") != std::string::npos);
}

TEST_CASE("min-spend accepts fractional probabilities") {
  const auto a = run("min-spend --bet 1:1/10000:57 --eps 5e-14");
  const auto b = run("min-spend --bet 1:1e-4:57 --eps 5e-14");
  CHECK(a.output == b.output);
}

TEST_CASE("max-prob with no budget slack prints the vertex probability") {
  // budget equals the cost of the winning wagers: probability p^w = 1e-8
  const auto result = run("max-prob --bet 1:1e-4:2 --budget 2");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("1.000000e-08") != std::string::npos);
}

TEST_CASE("ruin with a never-winning ticket") {
  const auto result = run("ruin --bankroll 10 --cost 1 --prize 0 --prob 0");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("(exact: 10.00)") != std::string::npos);
}

TEST_CASE("ruin simulation flag reports a mean near the exact value") {
  const auto result =
      run("ruin --bankroll 5 --cost 1 --prize 2 --prob 0.25 --simulate --trials 20000 --seed 5");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("simulation (20000 trials, seed 5)") != std::string::npos);
}

TEST_CASE("ruin rejects a winning ticket") {
  const auto result = run("ruin --bankroll 10 --cost 1 --prize 5000 --prob 0.001");
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("error") != std::string::npos);
}

TEST_CASE("bkr-check passes and is deterministic per seed") {
  const auto a = run("bkr-check --seed 11 --instances 100");
  CHECK(a.exit_code == 0);
  CHECK(a.output.find("all checks passed") != std::string::npos);
  CHECK(a.output.find("100/100 passed") != std::string::npos);
  const auto b = run("bkr-check --seed 11 --instances 100");
  CHECK(a.output == b.output);
}

TEST_CASE("unknown subcommands and malformed arguments exit with code 1") {
  CHECK(run("frobnicate").exit_code == 1);
  CHECK(run("min-spend").exit_code == 1);                   // --bet is required
  CHECK(run("min-spend --bet 1:abc:3").exit_code == 1);     // unparseable bet
  CHECK(run("min-spend --bet 1:0.1").exit_code == 1);       // wrong arity
  CHECK(run("--help").exit_code == 0);
}
