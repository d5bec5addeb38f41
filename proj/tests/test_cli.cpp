#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

// Runs the installed binary with the given arguments, capturing stdout.
// stderr is folded in when merge_stderr is set (for usage errors).
RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string("\"") + CLI_BINARY_PATH + "\" " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), out};
}

size_t count_lines(const std::string& text) {
  size_t lines = 0;
  for (char c : text) {
    if (c == '\n') ++lines;
  }
  return lines;
}

}  // namespace

TEST_CASE("scan output is deterministic across runs", "[cli]") {
  const auto first = run_cli("scan --steps 41");
  const auto second = run_cli("scan --steps 41");
  REQUIRE(first.exit_code == 0);
  REQUIRE(first.output == second.output);
  REQUIRE(count_lines(first.output) == 42);
  REQUIRE(first.output.rfind("theta,mean_s,abs_mean_s,", 0) == 0);
}

TEST_CASE("verification passes with the default seed", "[cli]") {
  const auto res = run_cli("verify");
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("result: 26/26 checks passed") != std::string::npos);
  REQUIRE(res.output.find("seed: 407715774446") != std::string::npos);
  REQUIRE(res.output.find("[FAIL]") == std::string::npos);
}

TEST_CASE("verification seed is configurable and echoed", "[cli]") {
  const auto res = run_cli("verify --seed 7");
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("seed: 7") != std::string::npos);
  const auto repeat = run_cli("verify --seed 7");
  REQUIRE(repeat.output == res.output);
}

TEST_CASE("an injected sign fault is caught and named", "[cli]") {
  const auto res = run_cli("verify --inject-fault");
  REQUIRE(res.exit_code == 1);
  REQUIRE(res.output.find("[FAIL] s2-operator-identity") != std::string::npos);
}

TEST_CASE("classification at the symmetric angle", "[cli]") {
  const auto res = run_cli("classify --theta 0.7853981633974483");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.output);
  REQUIRE(doc["state"] == "singlet");
  REQUIRE(doc["verdict"] == "order-2 nonlocal");
  REQUIRE(doc["chsh"]["violated"].get<bool>());
  REQUIRE(doc["chsh"]["threshold"].get<double>() == 2.0);
  REQUIRE_FALSE(doc["skewness"]["violated"].get<bool>());
  REQUIRE(doc["mean_s"].get<double>() ==
          Catch::Approx(-2.8284271247461903).margin(1e-9));
}

TEST_CASE("classification near the edge flags two orders", "[cli]") {
  const auto res = run_cli("classify --theta 0.05 --max-order 4");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.output);
  REQUIRE(doc["chsh"]["violated"].get<bool>());
  REQUIRE(doc["skewness"]["violated"].get<bool>());
  REQUIRE(doc["orders"].size() == 3);
  REQUIRE(doc["orders"][0]["order"] == 2);
  REQUIRE(doc["orders"][1]["nonlocal"].get<bool>());
  REQUIRE(doc["orders"][2]["nonlocal"].get<bool>());
  REQUIRE(doc["verdict"] == "order-2 nonlocal");
}

TEST_CASE("classification of the mixed state is classical", "[cli]") {
  const auto res = run_cli("classify --theta 0.7853981633974483 --state mixed");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.output);
  REQUIRE(doc["verdict"] == "classical");
  REQUIRE(doc["mean_s"].get<double>() == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("degree input converts on the classify path", "[cli]") {
  const auto res = run_cli("classify --theta 45 --degrees");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.output);
  REQUIRE(doc["theta"].get<double>() ==
          Catch::Approx(0.7853981633974483).margin(1e-12));
}

TEST_CASE("degree input converts on the scan path", "[cli]") {
  const auto res =
      run_cli("scan --degrees --theta-start 0 --theta-end 90 --steps 3");
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("\n0.785398163397,") != std::string::npos);
  REQUIRE(res.output.find("\n1.57079632679,") != std::string::npos);
}

TEST_CASE("usage errors exit with code two", "[cli]") {
  REQUIRE(run_cli("scan --steps 1", true).exit_code == 2);
  REQUIRE(run_cli("frobnicate", true).exit_code == 2);
  REQUIRE(run_cli("", true).exit_code == 2);
  REQUIRE(run_cli("classify --theta 0.5 --state werner", true).exit_code == 2);
}

TEST_CASE("help exits cleanly", "[cli]") {
  const auto res = run_cli("--help");
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("scan") != std::string::npos);
  REQUIRE(run_cli("scan --help").exit_code == 0);
}

TEST_CASE("unwritable output path exits with the io code", "[cli]") {
  const auto res =
      run_cli("scan --steps 3 --output /nonexistent_dir_zz/out.csv", true);
  REQUIRE(res.exit_code == 3);
}

TEST_CASE("missing config file exits with the io code", "[cli]") {
  REQUIRE(run_cli("scan --config /nonexistent_dir_zz/cfg.json", true)
              .exit_code == 3);
}

TEST_CASE("config file settings apply and flags override them", "[cli]") {
  const auto path = std::filesystem::temp_directory_path() /
                    "nonlocal_cli_test_cfg.json";
  {
    std::ofstream out(path);
    out << R"({"steps": 5, "theta_start": 0.0, "theta_end": 1.5707963267948966})";
  }
  const auto from_config = run_cli("scan --config " + path.string());
  REQUIRE(from_config.exit_code == 0);
  REQUIRE(count_lines(from_config.output) == 6);

  const auto overridden = run_cli("scan --config " + path.string() + " --steps 3");
  REQUIRE(overridden.exit_code == 0);
  REQUIRE(count_lines(overridden.output) == 4);
  std::filesystem::remove(path);
}

TEST_CASE("scan writes the same bytes to a file as to stdout", "[cli]") {
  const auto path = std::filesystem::temp_directory_path() /
                    "nonlocal_cli_test_scan.csv";
  const auto to_stdout = run_cli("scan --steps 9");
  const auto to_file = run_cli("scan --steps 9 --output " + path.string());
  REQUIRE(to_file.exit_code == 0);
  std::ifstream in(path, std::ios::binary);
  std::string written((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  REQUIRE(written == to_stdout.output);
  std::filesystem::remove(path);
}

TEST_CASE("model table masks classical cells past the classical edge",
          "[cli]") {
  const auto res = run_cli("kappa3-models --points 9");
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.rfind("s,kappa3_lhvt,kappa3_singlet,kappa3_product", 0) ==
          0);
  REQUIRE(res.output.find(",,") != std::string::npos);
}

TEST_CASE("bounds table prints the full hierarchy", "[cli]") {
  const auto res = run_cli("bounds");
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("classical_chsh_max") != std::string::npos);
  REQUIRE(res.output.find("quantum_chsh_max") != std::string::npos);
  REQUIRE(res.output.find("2.82842712475") != std::string::npos);
  REQUIRE(count_lines(res.output) == 12);
}
