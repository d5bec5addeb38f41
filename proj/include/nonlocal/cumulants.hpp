#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonlocal/hv_models.hpp"
#include "nonlocal/optimize.hpp"
#include "nonlocal/qubit_scenario.hpp"
#include "nonlocal/sampling.hpp"

namespace nonlocal {

inline constexpr int kMaxCumulantOrder = 8;

inline constexpr double kChshClassicalBound = 2.0;
// 2*sqrt(2)
inline constexpr double kChshQuantumMax = 2.8284271247461903;
// 16*sqrt(3)/9
inline constexpr double kSkewnessClassicalBound = 3.0792014356780038;
// 32*sqrt(3)/9
inline constexpr double kKappa3ClassicalExtreme = 6.1584028713560075;
// sqrt(4/3), the mean at which the classical kappa_3 extremes sit
inline constexpr double kKappa3ExtremeMean = 1.1547005383792515;
inline constexpr double kWitnessTol = 1e-10;

// kappa_n = m_n - sum_{k=1}^{n-1} C(n-1, k-1) kappa_k m_{n-k}
inline std::vector<double> cumulants_from_moments(const std::vector<double>& m) {
  const int n = static_cast<int>(m.size());
  if (n < 1 || n > kMaxCumulantOrder) {
    throw std::invalid_argument("cumulants_from_moments: order must lie in [1, 8]");
  }
  std::vector<double> kappa(m.size());
  for (int order = 1; order <= n; ++order) {
    double correction = 0.0;
    double binom = 1.0;  // C(order-1, k-1) built up multiplicatively
    for (int k = 1; k < order; ++k) {
      correction += binom * kappa[size_t(k - 1)] * m[size_t(order - k - 1)];
      binom = binom * (order - 1 - (k - 1)) / k;
    }
    kappa[size_t(order - 1)] = m[size_t(order - 1)] - correction;
  }
  return kappa;
}

// Closed forms for kappa_2 and kappa_3 as functions of the mean s, per model.
inline double lhvt_kappa2(double s) { return 4.0 - s * s; }
inline double lhvt_kappa3(double s) { return 2.0 * s * s * s - 8.0 * s; }
inline double singlet_kappa2(double s) { return 8.0 - s * s; }
inline double singlet_kappa3(double s) { return 2.0 * s * s * s - 16.0 * s; }
inline double product_kappa2(double s) { return 4.0 - s * s; }
inline double product_kappa3(double s) { return 2.0 * s * s * s - 4.0 * s; }

// n-th cumulant of the two-point classical distribution with weight p_plus
// on +2 and 1 - p_plus on -2.
inline double two_point_cumulant(double p_plus, int n) {
  if (n < 1 || n > kMaxCumulantOrder) {
    throw std::invalid_argument("two_point_cumulant: order must lie in [1, 8]");
  }
  if (p_plus < 0.0 || p_plus > 1.0) {
    throw std::domain_error("two_point_cumulant: p_plus must lie in [0, 1]");
  }
  const TwoPointDistribution dist{p_plus, 1.0 - p_plus};
  std::vector<double> m(static_cast<size_t>(n), 0.0);
  for (int k = 1; k <= n; ++k) m[size_t(k - 1)] = dist.moment(k);
  return cumulants_from_moments(m)[size_t(n - 1)];
}

// Extremes of the n-th cumulant over all hidden-variable mixtures, with the
// means at which they are attained. The mixture only enters through the
// weight on +2, so the search is one-dimensional.
struct CumulantBounds {
  double m_minus;
  double m_plus;
  double argmin_mean_s;
  double argmax_mean_s;
};

inline CumulantBounds lhvt_cumulant_bounds(int n) {
  if (n < 2 || n > 4) {
    throw std::invalid_argument("lhvt_cumulant_bounds: order must lie in [2, 4]");
  }
  auto value = [n](double p) { return two_point_cumulant(p, n); };
  const int grid = 10000;
  double best_lo = value(0.0), best_hi = best_lo;
  double p_lo = 0.0, p_hi = 0.0;
  for (int i = 1; i <= grid; ++i) {
    const double p = double(i) / grid;
    const double v = value(p);
    if (v < best_lo) {
      best_lo = v;
      p_lo = p;
    }
    if (v > best_hi) {
      best_hi = v;
      p_hi = p;
    }
  }
  const double step = 1.0 / grid;
  auto clamp01 = [](double x) { return std::min(1.0, std::max(0.0, x)); };
  auto [pmin, vmin] = golden_section_min(value, clamp01(p_lo - step),
                                         clamp01(p_lo + step), 1e-12);
  auto [pmax, vmax] = golden_section_max(value, clamp01(p_hi - step),
                                         clamp01(p_hi + step), 1e-12);
  if (vmin > best_lo) {
    vmin = best_lo;
    pmin = p_lo;
  }
  if (vmax < best_hi) {
    vmax = best_hi;
    pmax = p_hi;
  }
  auto mean_of = [](double p) { return 2.0 * (2.0 * p - 1.0); };
  return {vmin, vmax, mean_of(pmin), mean_of(pmax)};
}

// Same extremes found directly in mixture space, for an arbitrary list of
// strategy values: random restarts plus pairwise mass-transfer line searches.
// Exists to cross-check the one-dimensional reduction above.
inline std::pair<double, double> lhvt_cumulant_bounds_over_values(
    const std::vector<double>& strategy_values, int n, sampling::Rng& rng,
    int restarts = 8, int sweeps = 6) {
  if (n < 2 || n > kMaxCumulantOrder) {
    throw std::invalid_argument(
        "lhvt_cumulant_bounds_over_values: order must lie in [2, 8]");
  }
  const size_t count = strategy_values.size();
  if (count < 2) {
    throw std::invalid_argument(
        "lhvt_cumulant_bounds_over_values: need at least two strategy values");
  }
  auto kappa_of = [&](const std::vector<double>& w) {
    std::vector<double> m(size_t(n), 0.0);
    for (size_t i = 0; i < count; ++i) {
      double power = 1.0;
      for (int k = 1; k <= n; ++k) {
        power *= strategy_values[i];
        m[size_t(k - 1)] += w[i] * power;
      }
    }
    return cumulants_from_moments(m)[size_t(n - 1)];
  };
  auto optimize_once = [&](std::vector<double> w, double sign) {
    for (int sweep = 0; sweep < sweeps; ++sweep) {
      for (size_t i = 0; i < count; ++i) {
        for (size_t j = i + 1; j < count; ++j) {
          // move t of mass from i to j; t in [-w[j], w[i]]
          auto objective = [&](double t) {
            std::vector<double> trial = w;
            trial[i] -= t;
            trial[j] += t;
            return sign * kappa_of(trial);
          };
          auto [t, v] = golden_section_max(objective, -w[j], w[i], 1e-10);
          if (v > sign * kappa_of(w)) {
            w[i] -= t;
            w[j] += t;
          }
        }
      }
    }
    return kappa_of(w);
  };
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int r = 0; r < restarts; ++r) {
    const auto start = sampling::simplex_point(static_cast<int>(count), rng);
    hi = std::max(hi, optimize_once(start, +1.0));
    lo = std::min(lo, optimize_once(start, -1.0));
  }
  return {lo, hi};
}

struct WitnessResult {
  double value;
  bool violated;
};

// |<S>| against the classical ceiling 2.
inline WitnessResult chsh_witness(double mean_s) {
  const double value = std::abs(mean_s);
  return {value, value > kChshClassicalBound + kWitnessTol};
}

// |<S>^3 - 8<S>| against the classical ceiling 16*sqrt(3)/9.
inline WitnessResult skewness_witness(double mean_s) {
  const double value = std::abs(mean_s * mean_s * mean_s - 8.0 * mean_s);
  return {value, value > kSkewnessClassicalBound + kWitnessTol};
}

enum class Verdict { classical, order2, order3, higher };

inline std::string verdict_label(Verdict v) {
  switch (v) {
    case Verdict::classical: return "classical";
    case Verdict::order2: return "order-2 nonlocal";
    case Verdict::order3: return "order-3 nonlocal";
    case Verdict::higher: return "higher";
  }
  throw std::runtime_error("verdict_label: unreachable");
}

// Per-order record: the measured cumulant against the classical range, plus
// the nonlocality determination for that order. For orders 2 and 3 the
// determination is the witness (CHSH, skewness) evaluated at the measured
// mean; for order 4 it is the raw range comparison.
struct OrderAssessment {
  int order;
  double kappa;
  double classical_min;
  double classical_max;
  bool kappa_in_classical_range;
  bool nonlocal;
};

struct CumulantReport {
  double mean_s;
  std::vector<double> moments;
  std::vector<double> cumulants;
  WitnessResult chsh;
  WitnessResult skewness;
  std::vector<OrderAssessment> orders;
  // the decisive order's numbers (lowest nonlocal order; order 2 if none)
  double classical_min;
  double classical_max;
  double witness_value;
  Verdict verdict;
};

inline CumulantReport classify(const DensityMatrix& rho,
                               const BipartiteScenario& sc, int max_order) {
  if (max_order < 2 || max_order > 4) {
    throw std::invalid_argument("classify: max_order must lie in [2, 4]");
  }
  if (rho.dim() != 4) {
    throw std::invalid_argument("classify: state must be 4x4");
  }
  const ComplexMatrix s = s_operator(sc);
  CumulantReport report;
  report.moments.resize(size_t(max_order));
  for (int k = 1; k <= max_order; ++k) {
    report.moments[size_t(k - 1)] = moment(rho, s, k);
  }
  report.cumulants = cumulants_from_moments(report.moments);
  report.mean_s = report.moments[0];
  report.chsh = chsh_witness(report.mean_s);
  report.skewness = skewness_witness(report.mean_s);

  for (int n = 2; n <= max_order; ++n) {
    const CumulantBounds bounds = lhvt_cumulant_bounds(n);
    const double kappa = report.cumulants[size_t(n - 1)];
    const bool in_range = kappa >= bounds.m_minus - kWitnessTol &&
                          kappa <= bounds.m_plus + kWitnessTol;
    bool nonlocal = false;
    if (n == 2) nonlocal = report.chsh.violated;
    if (n == 3) nonlocal = report.skewness.violated;
    if (n == 4) nonlocal = !in_range;
    report.orders.push_back(
        {n, kappa, bounds.m_minus, bounds.m_plus, in_range, nonlocal});
  }

  report.verdict = Verdict::classical;
  for (const auto& oa : report.orders) {
    if (!oa.nonlocal) continue;
    report.verdict = oa.order == 2   ? Verdict::order2
                     : oa.order == 3 ? Verdict::order3
                                     : Verdict::higher;
    break;
  }

  const OrderAssessment* decisive = &report.orders.front();
  for (const auto& oa : report.orders) {
    if (oa.nonlocal) {
      decisive = &oa;
      break;
    }
  }
  report.classical_min = decisive->classical_min;
  report.classical_max = decisive->classical_max;
  report.witness_value = decisive->order == 2   ? report.chsh.value
                         : decisive->order == 3 ? report.skewness.value
                                                : decisive->kappa;
  return report;
}

}  // namespace nonlocal
