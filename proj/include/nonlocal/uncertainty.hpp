#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nonlocal/optimize.hpp"
#include "nonlocal/qubit_scenario.hpp"
#include "nonlocal/sampling.hpp"
#include "nonlocal/spectrum.hpp"

namespace nonlocal {

inline constexpr double kMajorizationTol = 1e-10;
inline constexpr double kHornTol = 1e-9;

// A pair of +/-1-valued qubit observables at relative angle theta, laid out
// as Y = sigma_z, Y' = cos(theta) sigma_z + sin(theta) sigma_x.
struct ObservablePair {
  QubitObservable y;
  QubitObservable y_prime;
  double theta;
};

inline ObservablePair observable_pair_at_angle(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0)) {
    throw std::invalid_argument(
        "observable_pair_at_angle: theta must lie in [0, pi/2]");
  }
  return {QubitObservable({0.0, 0.0, 1.0}),
          QubitObservable({std::sin(theta), 0.0, std::cos(theta)}), theta};
}

// Outcome distributions of the two observables on one state.
struct ProbabilityPair {
  std::array<double, 2> p;
  std::array<double, 2> q;
};

inline std::array<double, 2> outcome_probabilities(const DensityMatrix& rho,
                                                   const QubitObservable& obs) {
  if (rho.dim() != 2) {
    throw std::invalid_argument("outcome_probabilities: state must be 2x2");
  }
  const double mean = expectation(rho, obs.matrix());
  return {(1.0 + mean) / 2.0, (1.0 - mean) / 2.0};
}

inline ProbabilityPair measurement_distributions(const DensityMatrix& rho,
                                                 const ObservablePair& pair) {
  return {outcome_probabilities(rho, pair.y),
          outcome_probabilities(rho, pair.y_prime)};
}

// State-independent cap on the concatenated outcome distribution. The second
// component is the maximal eigenvector overlap cos(theta/2); entries sum to 2.
struct MajorizationVector {
  double theta;
  std::array<double, 4> s;
};

inline MajorizationVector majorization_bound(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0)) {
    throw std::invalid_argument("majorization_bound: theta must lie in [0, pi/2]");
  }
  const double c = std::cos(theta / 2.0);
  return {theta, {1.0, c, 1.0 - c, 0.0}};
}

// Worst prefix-sum excess of the concatenation p + q (sorted descending) over
// the bound vector; <= 0 means the bound majorizes the distribution.
inline double majorization_slack(const ProbabilityPair& pp,
                                 const MajorizationVector& bound) {
  std::array<double, 4> concat{pp.p[0], pp.p[1], pp.q[0], pp.q[1]};
  std::sort(concat.begin(), concat.end(), std::greater<double>());
  double worst = -std::numeric_limits<double>::infinity();
  double sc = 0.0, sb = 0.0;
  for (size_t k = 0; k < 4; ++k) {
    sc += concat[k];
    sb += bound.s[k];
    worst = std::max(worst, sc - sb);
  }
  return worst;
}

inline bool majorizes(const ProbabilityPair& pp, const MajorizationVector& bound,
                      double tol = kMajorizationTol) {
  return majorization_slack(pp, bound) <= tol;
}

// True when upper majorizes lower: equal totals, dominating prefix sums.
template <size_t N>
bool vector_majorizes(std::array<double, N> upper, std::array<double, N> lower,
                      double tol = kMajorizationTol) {
  std::sort(upper.begin(), upper.end(), std::greater<double>());
  std::sort(lower.begin(), lower.end(), std::greater<double>());
  double su = 0.0, sl = 0.0;
  for (size_t k = 0; k < N; ++k) {
    su += upper[k];
    sl += lower[k];
    if (sl > su + tol) return false;
  }
  return std::abs(su - sl) <= tol;
}

// Sharp expectation bounds: the largest eigenvalues of Y + Y' and Y - Y'.
inline double expectation_sum_bound(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0)) {
    throw std::invalid_argument(
        "expectation_sum_bound: theta must lie in [0, pi/2]");
  }
  return 2.0 * std::cos(theta / 2.0);
}

inline double expectation_diff_bound(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0)) {
    throw std::invalid_argument(
        "expectation_diff_bound: theta must lie in [0, pi/2]");
  }
  return 2.0 * std::sin(theta / 2.0);
}

// Max of <r|M|r> over the Bloch sphere by grid plus refinement; M is the
// 2x2 Hermitian whose Bloch vector is v, so the true value is |v|.
inline double sphere_expectation_max(const ComplexMatrix& obs) {
  detail::require_hermitian(obs);
  if (obs.dim() != 2) {
    throw std::invalid_argument("sphere_expectation_max: observable must be 2x2");
  }
  return sphere_max(
      [&](double polar, double azimuth) {
        const Bloch3 r{std::sin(polar) * std::cos(azimuth),
                       std::sin(polar) * std::sin(azimuth), std::cos(polar)};
        return expectation(qubit_state(r), obs);
      },
      100);
}

// Partial-sum inequality for C = A + B at one level l: the top-l eigenvalue
// sum of C never exceeds the top-l sums of A and B combined.
inline bool horn_check(const ComplexMatrix& a, const ComplexMatrix& b, int l,
                       double tol = kHornTol) {
  a.require_same_dim(b);
  if (l < 1 || l > a.dim()) {
    throw std::invalid_argument("horn_check: level must lie in [1, dim]");
  }
  const auto alpha = hermitian_eigenvalues(a).eigenvalues;
  const auto beta = hermitian_eigenvalues(b).eigenvalues;
  const auto gamma = hermitian_eigenvalues(a + b).eigenvalues;
  double sa = 0.0, sb = 0.0, sc = 0.0;
  for (int k = 0; k < l; ++k) {
    sa += alpha[size_t(k)];
    sb += beta[size_t(k)];
    sc += gamma[size_t(k)];
  }
  return sa + sb >= sc - tol;
}

// Worst violation over all levels; <= 0 when the inequality family holds.
inline double horn_defect(const ComplexMatrix& a, const ComplexMatrix& b) {
  a.require_same_dim(b);
  const auto alpha = hermitian_eigenvalues(a).eigenvalues;
  const auto beta = hermitian_eigenvalues(b).eigenvalues;
  const auto gamma = hermitian_eigenvalues(a + b).eigenvalues;
  double worst = -std::numeric_limits<double>::infinity();
  double sa = 0.0, sb = 0.0, sc = 0.0;
  for (size_t k = 0; k < gamma.size(); ++k) {
    sa += alpha[k];
    sb += beta[k];
    sc += gamma[k];
    worst = std::max(worst, sc - (sa + sb));
  }
  return worst;
}

// Normalized coordinates for the orthogonal pair (theta = pi/2):
// a = <Y + Y'>/sqrt(2), a' = <Y - Y'>/sqrt(2). Every state has
// a^2 + a'^2 <= 1.
struct ConstraintCoordinates {
  double a;
  double a_prime;

  double norm_squared() const { return a * a + a_prime * a_prime; }
};

inline ConstraintCoordinates constraint_coordinates(const DensityMatrix& rho,
                                                    const ObservablePair& pair) {
  if (std::abs(pair.theta - std::numbers::pi / 2.0) > 1e-12) {
    throw std::invalid_argument(
        "constraint_coordinates: defined for the orthogonal pair only");
  }
  const double mean_y = expectation(rho, pair.y.matrix());
  const double mean_yp = expectation(rho, pair.y_prime.matrix());
  return {(mean_y + mean_yp) / std::numbers::sqrt2,
          (mean_y - mean_yp) / std::numbers::sqrt2};
}

// Max of a^2 + a'^2 over pure states: a sweep of the Y-Y' plane circle,
// golden-section refinement, and random states as a cross-check.
inline double constraint_norm_max(sampling::Rng& rng, int random_samples = 200) {
  const auto pair = observable_pair_at_angle(std::numbers::pi / 2.0);
  auto value_at = [&](const Bloch3& r) {
    return constraint_coordinates(qubit_state(r), pair).norm_squared();
  };
  double best = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / 400;
    best = std::max(best, value_at({std::sin(phi), 0.0, std::cos(phi)}));
  }
  auto [phi_best, circle_best] = golden_section_max(
      [&](double phi) {
        return value_at({std::sin(phi), 0.0, std::cos(phi)});
      },
      0.0, 2.0 * std::numbers::pi, 1e-10);
  best = std::max(best, circle_best);
  for (int i = 0; i < random_samples; ++i) {
    best = std::max(best, value_at(sampling::ball_bloch(rng)));
  }
  return best;
}

}  // namespace nonlocal
