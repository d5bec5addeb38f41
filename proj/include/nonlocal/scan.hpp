#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonlocal/cumulants.hpp"
#include "nonlocal/hv_models.hpp"
#include "nonlocal/qubit_scenario.hpp"

namespace nonlocal {

enum class ScanState { singlet, product, mixed };

inline ScanState parse_scan_state(const std::string& name) {
  if (name == "singlet") return ScanState::singlet;
  if (name == "product") return ScanState::product;
  if (name == "mixed") return ScanState::mixed;
  throw std::invalid_argument("unknown state '" + name +
                              "' (expected singlet, product, or mixed)");
}

inline std::string scan_state_name(ScanState st) {
  switch (st) {
    case ScanState::singlet: return "singlet";
    case ScanState::product: return "product";
    case ScanState::mixed: return "mixed";
  }
  throw std::runtime_error("scan_state_name: unreachable");
}

struct ScanConfig {
  double theta_start = 0.0;
  double theta_end = std::numbers::pi / 2.0;
  int steps = 201;  // grid points, both endpoints included
  ScanState state = ScanState::singlet;
  Bloch3 bloch_a{0.0, 0.0, 1.0};
  Bloch3 bloch_b{0.0, 0.0, 1.0};
  int max_order = 3;
  std::string output_path;  // empty means standard output
};

inline void validate_scan_config(const ScanConfig& cfg) {
  if (cfg.steps < 2) throw std::invalid_argument("scan: steps must be >= 2");
  if (!(cfg.theta_start < cfg.theta_end)) {
    throw std::invalid_argument("scan: theta_start must be < theta_end");
  }
  if (!(cfg.theta_start >= 0.0 && cfg.theta_end <= std::numbers::pi)) {
    throw std::invalid_argument("scan: theta range must lie within [0, pi]");
  }
  if (cfg.max_order < 2 || cfg.max_order > 4) {
    throw std::invalid_argument("scan: max_order must lie in [2, 4]");
  }
}

inline DensityMatrix make_scan_state(const ScanConfig& cfg) {
  switch (cfg.state) {
    case ScanState::singlet: return singlet();
    case ScanState::product: return product_state(cfg.bloch_a, cfg.bloch_b);
    case ScanState::mixed: return maximally_mixed(4);
  }
  throw std::runtime_error("make_scan_state: unreachable");
}

struct ScanRow {
  double theta;
  double mean_s;
  double abs_mean_s;
  bool chsh_violated;
  double skew_witness;
  bool skew_violated;
  double kappa2_qm;
  double kappa3_qm;
};

inline std::vector<ScanRow> compute_scan(const ScanConfig& cfg) {
  validate_scan_config(cfg);
  const DensityMatrix rho = make_scan_state(cfg);
  std::vector<ScanRow> rows;
  rows.reserve(size_t(cfg.steps));
  for (int i = 0; i < cfg.steps; ++i) {
    const double theta =
        cfg.theta_start +
        (cfg.theta_end - cfg.theta_start) * double(i) / double(cfg.steps - 1);
    const ComplexMatrix s = s_operator(canonical_scenario(theta));
    std::vector<double> m(3);
    for (int k = 1; k <= 3; ++k) m[size_t(k - 1)] = moment(rho, s, k);
    const auto kappa = cumulants_from_moments(m);
    const auto chsh = chsh_witness(m[0]);
    const auto skew = skewness_witness(m[0]);
    rows.push_back({theta, m[0], chsh.value, chsh.violated, skew.value,
                    skew.violated, kappa[1], kappa[2]});
  }
  return rows;
}

// 12 significant digits, locale-independent enough for golden files.
inline std::string format_numeric(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string scan_csv(const ScanConfig& cfg) {
  const auto rows = compute_scan(cfg);
  std::string out =
      "theta,mean_s,abs_mean_s,chsh_violated,skew_witness,skew_violated,"
      "kappa2_qm,kappa3_qm\n";
  for (const auto& r : rows) {
    out += format_numeric(r.theta);
    out += ',';
    out += format_numeric(r.mean_s);
    out += ',';
    out += format_numeric(r.abs_mean_s);
    out += ',';
    out += r.chsh_violated ? '1' : '0';
    out += ',';
    out += format_numeric(r.skew_witness);
    out += ',';
    out += r.skew_violated ? '1' : '0';
    out += ',';
    out += format_numeric(r.kappa2_qm);
    out += ',';
    out += format_numeric(r.kappa3_qm);
    out += '\n';
  }
  return out;
}

// kappa_3 of the three closed-form models on a mean-s grid spanning
// [-2*sqrt(2), 2*sqrt(2)]. The classical and product columns are only
// defined for |s| <= 2 and are left empty outside that range.
inline std::string kappa3_models_csv(int points = 201) {
  if (points < 2) {
    throw std::invalid_argument("kappa3-models: points must be >= 2");
  }
  const double lo = -kChshQuantumMax;
  const double hi = kChshQuantumMax;
  std::string out = "s,kappa3_lhvt,kappa3_singlet,kappa3_product\n";
  for (int i = 0; i < points; ++i) {
    const double s = lo + (hi - lo) * double(i) / double(points - 1);
    const bool classical_range = std::abs(s) <= 2.0 + 1e-12;
    out += format_numeric(s);
    out += ',';
    if (classical_range) out += format_numeric(lhvt_kappa3(s));
    out += ',';
    out += format_numeric(singlet_kappa3(s));
    out += ',';
    if (classical_range) out += format_numeric(product_kappa3(s));
    out += '\n';
  }
  return out;
}

// Bound table for the model hierarchy, one "name value" row per line.
inline std::string bounds_table() {
  struct Row {
    const char* name;
    double value;
  };
  const CumulantBounds k2 = lhvt_cumulant_bounds(2);
  const CumulantBounds k3 = lhvt_cumulant_bounds(3);
  const CumulantBounds k4 = lhvt_cumulant_bounds(4);
  const Row rows[] = {
      {"classical_kappa2_min", k2.m_minus},
      {"classical_kappa2_max", k2.m_plus},
      {"classical_kappa3_min", k3.m_minus},
      {"classical_kappa3_max", k3.m_plus},
      {"classical_kappa4_min", k4.m_minus},
      {"classical_kappa4_max", k4.m_plus},
      {"classical_chsh_max", kChshClassicalBound},
      {"quantum_chsh_max", kChshQuantumMax},
      {"superquantum_chsh_max", 4.0},
      {"nonsteering_quadratic_bound", kNonSteeringQuadraticBound},
      {"quantum_quadratic_bound", kQuantumQuadraticBound},
      {"skewness_witness_bound", kSkewnessClassicalBound},
  };
  std::string out;
  for (const auto& r : rows) {
    std::string line = r.name;
    while (line.size() < 30) line += ' ';
    line += ' ';
    line += format_numeric(r.value);
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace nonlocal
