#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "nonlocal/scan.hpp"

using namespace nonlocal;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoSqrtTwo = 2.8284271247461903;

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  size_t pos = 0;
  while (true) {
    const size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(pos));
      break;
    }
    cells.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return cells;
}
}  // namespace

TEST_CASE("state names round trip", "[scan]") {
  for (auto st : {ScanState::singlet, ScanState::product, ScanState::mixed}) {
    REQUIRE(parse_scan_state(scan_state_name(st)) == st);
  }
  REQUIRE_THROWS_AS(parse_scan_state("werner"), std::invalid_argument);
}

TEST_CASE("scan grid includes both endpoints", "[scan]") {
  ScanConfig cfg;
  cfg.steps = 5;
  const auto rows = compute_scan(cfg);
  REQUIRE(rows.size() == 5);
  REQUIRE(rows.front().theta == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(rows.back().theta == Catch::Approx(kPi / 2.0).margin(1e-15));
  REQUIRE(rows[1].theta == Catch::Approx(kPi / 8.0).margin(1e-14));
}

TEST_CASE("singlet scan hits the quantum maximum mid-grid", "[scan]") {
  ScanConfig cfg;
  cfg.steps = 101;
  const auto rows = compute_scan(cfg);
  const auto& mid = rows[50];
  REQUIRE(mid.theta == Catch::Approx(kPi / 4.0).margin(1e-14));
  REQUIRE(mid.abs_mean_s == Catch::Approx(kTwoSqrtTwo).margin(1e-9));
  REQUIRE(mid.chsh_violated);
  REQUIRE(mid.skew_witness == Catch::Approx(0.0).margin(1e-9));
  REQUIRE_FALSE(mid.skew_violated);
}

TEST_CASE("singlet scan endpoint rows", "[scan]") {
  ScanConfig cfg;
  cfg.steps = 11;
  const auto rows = compute_scan(cfg);
  const auto& first = rows.front();
  REQUIRE(first.mean_s == Catch::Approx(-2.0).margin(1e-12));
  REQUIRE(first.abs_mean_s == Catch::Approx(2.0).margin(1e-12));
  REQUIRE_FALSE(first.chsh_violated);
  REQUIRE(first.skew_witness == Catch::Approx(8.0).margin(1e-11));
  REQUIRE(first.skew_violated);
  REQUIRE(first.kappa2_qm == Catch::Approx(4.0).margin(1e-11));
  REQUIRE(first.kappa3_qm == Catch::Approx(16.0).margin(1e-10));
}

TEST_CASE("mixed state scan is witness-silent", "[scan]") {
  ScanConfig cfg;
  cfg.steps = 7;
  cfg.state = ScanState::mixed;
  for (const auto& row : compute_scan(cfg)) {
    REQUIRE(row.mean_s == Catch::Approx(0.0).margin(1e-12));
    REQUIRE_FALSE(row.chsh_violated);
    REQUIRE(row.skew_witness == Catch::Approx(0.0).margin(1e-12));
    REQUIRE_FALSE(row.skew_violated);
    REQUIRE(row.kappa2_qm == Catch::Approx(4.0).margin(1e-11));
    REQUIRE(row.kappa3_qm == Catch::Approx(0.0).margin(1e-11));
  }
}

TEST_CASE("scan rows agree with direct classification", "[scan]") {
  ScanConfig cfg;
  cfg.steps = 9;
  const auto rows = compute_scan(cfg);
  for (const auto& row : rows) {
    const auto report = classify(singlet(), canonical_scenario(row.theta), 3);
    REQUIRE(row.mean_s == Catch::Approx(report.mean_s).margin(1e-12));
    REQUIRE(row.kappa2_qm == Catch::Approx(report.cumulants[1]).margin(1e-12));
    REQUIRE(row.kappa3_qm == Catch::Approx(report.cumulants[2]).margin(1e-12));
    REQUIRE(row.chsh_violated == report.chsh.violated);
    REQUIRE(row.skew_violated == report.skewness.violated);
  }
}

TEST_CASE("product scan matches its variance closed form", "[scan]") {
  ScanConfig cfg;
  cfg.steps = 21;
  cfg.state = ScanState::product;
  for (const auto& row : compute_scan(cfg)) {
    REQUIRE(row.kappa2_qm ==
            Catch::Approx(product_kappa2(row.mean_s)).margin(1e-9));
    REQUIRE(row.kappa3_qm ==
            Catch::Approx(product_kappa3(row.mean_s)).margin(1e-9));
    REQUIRE_FALSE(row.chsh_violated);
  }
}

TEST_CASE("scan config validation", "[scan]") {
  ScanConfig cfg;
  cfg.steps = 1;
  REQUIRE_THROWS_AS(validate_scan_config(cfg), std::invalid_argument);
  cfg = ScanConfig{};
  cfg.theta_start = 1.0;
  cfg.theta_end = 1.0;
  REQUIRE_THROWS_AS(validate_scan_config(cfg), std::invalid_argument);
  cfg = ScanConfig{};
  cfg.theta_end = kPi + 0.1;
  REQUIRE_THROWS_AS(validate_scan_config(cfg), std::invalid_argument);
  cfg = ScanConfig{};
  cfg.theta_start = -0.1;
  REQUIRE_THROWS_AS(validate_scan_config(cfg), std::invalid_argument);
  cfg = ScanConfig{};
  cfg.max_order = 5;
  REQUIRE_THROWS_AS(validate_scan_config(cfg), std::invalid_argument);
  REQUIRE_NOTHROW(validate_scan_config(ScanConfig{}));
}

TEST_CASE("csv header and line endings", "[scan]") {
  ScanConfig cfg;
  cfg.steps = 4;
  const std::string csv = scan_csv(cfg);
  REQUIRE(csv.find('\r') == std::string::npos);
  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == 5);  // header + 4 rows
  REQUIRE(lines[0] ==
          "theta,mean_s,abs_mean_s,chsh_violated,skew_witness,skew_violated,"
          "kappa2_qm,kappa3_qm");
  REQUIRE(csv.back() == '\n');
}

TEST_CASE("csv output is deterministic", "[scan]") {
  ScanConfig cfg;
  cfg.steps = 33;
  REQUIRE(scan_csv(cfg) == scan_csv(cfg));
}

TEST_CASE("csv numbers round trip at twelve significant digits", "[scan]") {
  ScanConfig cfg;
  cfg.steps = 25;
  const auto rows = compute_scan(cfg);
  const auto lines = split_lines(scan_csv(cfg));
  REQUIRE(lines.size() == rows.size() + 1);
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto cells = split_cells(lines[i + 1]);
    REQUIRE(cells.size() == 8);
    const double expected[6] = {rows[i].theta,        rows[i].mean_s,
                                rows[i].abs_mean_s,   rows[i].skew_witness,
                                rows[i].kappa2_qm,    rows[i].kappa3_qm};
    const size_t index[6] = {0, 1, 2, 4, 6, 7};
    for (int j = 0; j < 6; ++j) {
      const double parsed = std::strtod(cells[index[j]].c_str(), nullptr);
      const double scale = std::max(1.0, std::abs(expected[j]));
      REQUIRE(std::abs(parsed - expected[j]) <= 1e-11 * scale);
    }
    REQUIRE(cells[3] == (rows[i].chsh_violated ? "1" : "0"));
    REQUIRE(cells[5] == (rows[i].skew_violated ? "1" : "0"));
  }
}

TEST_CASE("numeric formatting", "[scan]") {
  REQUIRE(format_numeric(0.0) == "0");
  REQUIRE(format_numeric(-0.0) == "0");
  REQUIRE(format_numeric(2.0) == "2");
  REQUIRE(format_numeric(kTwoSqrtTwo) == "2.82842712475");
}

TEST_CASE("model comparison table masks the classical columns", "[scan]") {
  const std::string csv = kappa3_models_csv(9);
  const auto lines = split_lines(csv);
  REQUIRE(lines[0] == "s,kappa3_lhvt,kappa3_singlet,kappa3_product");
  REQUIRE(lines.size() == 10);

  // first row sits at s = -2sqrt(2), outside the classical support
  const auto edge = split_cells(lines[1]);
  REQUIRE(edge.size() == 4);
  REQUIRE(edge[1].empty());
  REQUIRE(edge[3].empty());
  REQUIRE(std::strtod(edge[0].c_str(), nullptr) ==
          Catch::Approx(-kTwoSqrtTwo).margin(1e-10));
  // singlet kappa3 vanishes at the quantum edge: 2s^3 = 16s there
  REQUIRE(std::strtod(edge[2].c_str(), nullptr) ==
          Catch::Approx(0.0).margin(1e-9));

  // middle row is s = 0 where every model gives zero
  const auto center = split_cells(lines[5]);
  REQUIRE(std::strtod(center[0].c_str(), nullptr) ==
          Catch::Approx(0.0).margin(1e-12));
  REQUIRE(std::strtod(center[1].c_str(), nullptr) ==
          Catch::Approx(0.0).margin(1e-12));
  REQUIRE_FALSE(center[1].empty());

  REQUIRE_THROWS_AS(kappa3_models_csv(1), std::invalid_argument);
}

TEST_CASE("bounds table lists the hierarchy", "[scan]") {
  const std::string table = bounds_table();
  REQUIRE(table.find("classical_kappa3_max") != std::string::npos);
  REQUIRE(table.find("6.15840287136") != std::string::npos);
  REQUIRE(table.find("quantum_chsh_max") != std::string::npos);
  REQUIRE(table.find("2.82842712475") != std::string::npos);
  REQUIRE(table.find("superquantum_chsh_max") != std::string::npos);
  REQUIRE(table.find("nonsteering_quadratic_bound") != std::string::npos);
  REQUIRE(split_lines(table).size() == 12);
}
