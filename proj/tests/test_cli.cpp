#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef SHRINKRISK_CLI_PATH
#error "SHRINKRISK_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(SHRINKRISK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) result.output += buf;
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& text, char prefix) {
  int count = 0;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line[0] == prefix) ++count;
  }
  return count;
}

int data_rows(const std::string& csv) {
  int total = 0;
  std::istringstream ss(csv);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line[0] != '#') ++total;
  }
  return total - 1;  // minus the header
}

}  // namespace

TEST_CASE("exact-risk reports the known closed forms") {
  const auto result = run_cli("exact-risk --p 3 --n 2 --tau2 1");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("empirical-modified-bayes") != std::string::npos);
  // 11/12 with 17 significant digits.
  CHECK(result.output.find("0.9166666666666666") != std::string::npos);
  CHECK(result.output.find("Proven") != std::string::npos);
  CHECK(result.output.find("# p=3") != std::string::npos);
}

TEST_CASE("estimate round-trips the worked example") {
  write_file("cli_x.csv", "3, 1, 1\n");
  write_file("cli_nu.csv", "1 1 1\n");
  const auto result = run_cli(
      "estimate cli_x.csv --kind empirical-modified-bayes --n 2 --s2 4 "
      "--nu-file cli_nu.csv");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("2.5") != std::string::npos);
  CHECK(data_rows(result.output) == 3);

  // Same via JSON.
  const auto json_result = run_cli(
      "estimate cli_x.csv --kind empirical-modified-bayes --n 2 --s2 4 "
      "--nu-file cli_nu.csv --format json");
  CHECK(json_result.exit_code == 0);
  const auto doc = nlohmann::json::parse(json_result.output);
  CHECK(doc["rows"][0][0].get<double>() == doctest::Approx(2.5));
  CHECK(doc["rows"][1][0].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("estimate demands an explicit prior-mean choice when it matters") {
  write_file("cli_x.csv", "3, 1, 1\n");
  const auto missing =
      run_cli("estimate cli_x.csv --kind empirical-modified-bayes --n 2 --s2 4");
  CHECK(missing.exit_code == 2);
  const auto zero = run_cli(
      "estimate cli_x.csv --kind empirical-modified-bayes --n 2 --s2 4 "
      "--nu-zero");
  CHECK(zero.exit_code == 0);
  // The MLE ignores nu, so no choice is required.
  const auto mle = run_cli("estimate cli_x.csv --kind mle --n 2");
  CHECK(mle.exit_code == 0);
}

TEST_CASE("invalid inputs exit with code 2") {
  CHECK(run_cli("exact-risk --p 3 --n 2").exit_code == 2);  // tau2 required
  CHECK(run_cli("exact-risk --p 0 --n 2 --tau2 1").exit_code == 2);
  CHECK(run_cli("exact-risk --p 3 --n 2 --tau2 -1").exit_code == 2);
  CHECK(run_cli("exact-risk --p 2 --n 2 --tau2 1 "
                "--estimators empirical-modified-bayes")
            .exit_code == 2);
  CHECK(run_cli("exact-risk --p 3 --n 2 --tau2 1 --estimators ridge")
            .exit_code == 2);
  CHECK(run_cli("exact-risk --p 3 --n 2 --tau2 1 --estimators james-stein")
            .exit_code == 2);  // no closed form
  CHECK(run_cli("ratio-curve").exit_code == 2);  // missing --n
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("estimate missing_file.csv --kind mle --n 2").exit_code == 2);
  CHECK(run_cli("ratio-curve --n 5 --format yaml").exit_code == 2);
}

TEST_CASE("help exits zero") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("exact-risk --help").exit_code == 0);
}

TEST_CASE("ratio-curve emits the advertised grid") {
  const auto result = run_cli("ratio-curve --n 5 --points 20");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("rho,ratio,lower_bound,upper_bound") !=
        std::string::npos);
  CHECK(result.output.find("# n=5") != std::string::npos);
  CHECK(data_rows(result.output) == 20);
  CHECK(result.output.find("0.01") != std::string::npos);  // grid start
  // Every ratio on an n = 5 curve certifies dominance: strictly below one.
  std::istringstream ss(result.output);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'r') continue;
    const auto comma = line.find(',');
    const double ratio = std::stod(line.substr(comma + 1));
    CHECK(ratio < 1.0);
    CHECK(ratio > 0.0);
  }
}

TEST_CASE("bound-curve sign matches the dominance threshold") {
  const auto good = run_cli("bound-curve --n 5 --points 30");
  CHECK(good.exit_code == 0);
  std::istringstream ss(good.output);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'r') continue;
    const auto comma = line.find(',');
    CHECK(std::stod(line.substr(comma + 1)) <= 0.0);
  }
  const auto bad = run_cli("bound-curve --n 2 --points 30 --rho-min 0.01");
  CHECK(bad.exit_code == 0);
  bool any_positive = false;
  std::istringstream ss2(bad.output);
  while (std::getline(ss2, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'r') continue;
    const auto comma = line.find(',');
    any_positive |= std::stod(line.substr(comma + 1)) > 0.0;
  }
  CHECK(any_positive);
}

TEST_CASE("surface stays below the baseline when dominance is proven") {
  const auto result = run_cli("surface --n 6 --p 8 --points 5");
  CHECK(result.exit_code == 0);
  CHECK(data_rows(result.output) == 25);
  std::istringstream ss(result.output);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    const auto last = line.rfind(',');
    CHECK(std::stod(line.substr(last + 1)) < 0.0);
  }
}

TEST_CASE("optimal-c reports the closed form and its numeric twin") {
  const auto result = run_cli("optimal-c --p 10 --n 6");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("c_opt,c_numeric,c_minimax_max") !=
        std::string::npos);
  CHECK(result.output.find("10,6,1,") != std::string::npos);
  CHECK(result.output.find(",2\n") != std::string::npos);
}

TEST_CASE("mc-risk output is byte-identical across thread counts") {
  const std::string common =
      "mc-risk --p 5 --n 3 --tau2 2 --replicates 30000 --seed 99 ";
  CHECK(run_cli(common + "--threads 1 --out cli_t1.csv").exit_code == 0);
  CHECK(run_cli(common + "--threads 4 --out cli_t4.csv").exit_code == 0);
  const std::string a = read_file("cli_t1.csv");
  const std::string b = read_file("cli_t4.csv");
  CHECK(a == b);
  CHECK(!a.empty());
  CHECK(a.find("# seed=99") != std::string::npos);
  // Thread count must not leak into the report.
  CHECK(a.find("thread") == std::string::npos);
}

TEST_CASE("mc-risk cross-checks stay within four standard errors") {
  const auto result = run_cli(
      "mc-risk --p 5 --n 3 --tau2 1 --replicates 50000 --seed 7 "
      "--format json");
  CHECK(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  REQUIRE(doc["columns"].size() == 5);
  for (const auto& row : doc["rows"]) {
    const double z = row[4].get<double>();
    CHECK(std::fabs(z) < 4.0);
  }
}

TEST_CASE("manifest captures the run parameters") {
  const auto result = run_cli(
      "exact-risk --p 3 --n 2 --tau2 1 --out cli_er.csv "
      "--manifest cli_manifest.json");
  CHECK(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(read_file("cli_manifest.json"));
  CHECK(doc["command"] == "exact-risk");
  CHECK(doc["parameters"]["p"] == "3");
  CHECK(doc["parameters"]["tau2"] == "1");
  CHECK(doc.contains("version"));
}

TEST_CASE("verify-lemmas passes on a reduced grid and exits zero") {
  const auto result =
      run_cli("verify-lemmas --max-dof 12 --mc-replicates 20000");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("# failures=0") != std::string::npos);
  CHECK(result.output.find("dof-monotonicity") != std::string::npos);
  CHECK(result.output.find("stein-identity") != std::string::npos);
  CHECK(count_lines(result.output, '#') >= 5);
}

TEST_CASE("a corrupted bound is caught and exits one") {
  const auto result = run_cli(
      "verify-lemmas --max-dof 8 --mc-replicates 20000 "
      "--corrupt-bound inverse-shift-bracket");
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("fail") != std::string::npos);
  CHECK(result.output.find("inverse-shift-bracket") != std::string::npos);

  const auto result2 = run_cli(
      "verify-lemmas --max-dof 8 --mc-replicates 20000 "
      "--corrupt-bound inverse-shift-square-bracket");
  CHECK(result2.exit_code == 1);
  CHECK(result2.output.find("inverse-shift-square-bracket") !=
        std::string::npos);

  // An unknown fixture name is an input error, not a failed check.
  CHECK(run_cli("verify-lemmas --corrupt-bound nonsense --max-dof 4 "
                "--mc-replicates 1000")
            .exit_code == 2);
}

TEST_CASE("json output carries meta, columns and rows") {
  const auto result = run_cli("ratio-curve --n 5 --points 6 --format json");
  CHECK(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  CHECK(doc["meta"]["n"] == "5");
  REQUIRE(doc["columns"].size() == 4);
  CHECK(doc["columns"][0] == "rho");
  CHECK(doc["rows"].size() == 6);
}
