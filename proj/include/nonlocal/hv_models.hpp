#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nonlocal/qubit_scenario.hpp"
#include "nonlocal/sampling.hpp"

namespace nonlocal {

// One extremal local strategy: a fixed +/-1 outcome for each setting.
struct DeterministicStrategy {
  int a_x;
  int a_xp;
  int b_y;
  int b_yp;

  // A(X)[B(Y) - B(Y')] + A(X')[B(Y) + B(Y')]; always +/-2.
  double s_value() const {
    return a_x * (b_y - b_yp) + a_xp * (b_y + b_yp);
  }

  // sum_ij m_ij A_i B_j for arbitrary joint-observable coefficients
  double s_value(const std::array<std::array<double, 2>, 2>& m) const {
    const double a[2] = {double(a_x), double(a_xp)};
    const double b[2] = {double(b_y), double(b_yp)};
    double v = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) v += m[i][j] * a[i] * b[j];
    return v;
  }
};

// All 16 strategies in lexicographic order over (a_x, a_xp, b_y, b_yp),
// -1 before +1.
inline std::vector<DeterministicStrategy> enumerate_strategies() {
  std::vector<DeterministicStrategy> out;
  out.reserve(16);
  for (int k = 0; k < 16; ++k) {
    out.push_back({(k >> 3 & 1) ? 1 : -1, (k >> 2 & 1) ? 1 : -1,
                   (k >> 1 & 1) ? 1 : -1, (k & 1) ? 1 : -1});
  }
  return out;
}

// Probability weights over the 16 deterministic strategies.
struct HiddenVariableMixture {
  std::array<double, 16> weights;
};

inline void validate_mixture(const HiddenVariableMixture& mix) {
  double total = 0.0;
  for (double w : mix.weights) {
    if (w < 0.0) throw std::domain_error("mixture weight is negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::domain_error("mixture weights do not sum to 1");
  }
}

inline HiddenVariableMixture uniform_mixture() {
  HiddenVariableMixture mix{};
  mix.weights.fill(1.0 / 16.0);
  return mix;
}

inline HiddenVariableMixture point_mixture(int strategy_index) {
  HiddenVariableMixture mix{};
  mix.weights.fill(0.0);
  mix.weights.at(static_cast<size_t>(strategy_index)) = 1.0;
  return mix;
}

// Convex range of <S> over all mixtures: the hull of the 16 strategy values.
inline std::pair<double, double> lhvt_chsh_range() {
  double lo = 0.0, hi = 0.0;
  for (const auto& st : enumerate_strategies()) {
    lo = std::min(lo, st.s_value());
    hi = std::max(hi, st.s_value());
  }
  return {lo, hi};
}

// Distribution of the LHVT value of S, supported on {-2, +2}.
struct TwoPointDistribution {
  double p_plus;
  double p_minus;

  double mean() const { return 2.0 * (p_plus - p_minus); }
  // m_k = 2^k (p+ + (-1)^k p-)
  double moment(int k) const {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return std::pow(2.0, k) * (p_plus + sign * p_minus);
  }
};

inline TwoPointDistribution lhvt_s_distribution(const HiddenVariableMixture& mix) {
  validate_mixture(mix);
  const auto strategies = enumerate_strategies();
  TwoPointDistribution dist{0.0, 0.0};
  for (size_t i = 0; i < strategies.size(); ++i) {
    (strategies[i].s_value() > 0.0 ? dist.p_plus : dist.p_minus) += mix.weights[i];
  }
  return dist;
}

// LHVT mean of S for a mixture under arbitrary coefficients m_ij.
inline double lhvt_mean_s(const HiddenVariableMixture& mix,
                          const std::array<std::array<double, 2>, 2>& m) {
  validate_mixture(mix);
  const auto strategies = enumerate_strategies();
  double mean = 0.0;
  for (size_t i = 0; i < strategies.size(); ++i) {
    mean += mix.weights[i] * strategies[i].s_value(m);
  }
  return mean;
}

// [E(X,Y) - E(X,Y')]^2 + [E(X',Y) + E(X',Y')]^2. Non-steering correlations
// keep this <= 2; quantum ones <= 4.
inline double nonsteering_quadratic(double e_xy, double e_xyp, double e_xpy,
                                    double e_xpyp) {
  for (double e : {e_xy, e_xyp, e_xpy, e_xpyp}) {
    if (std::abs(e) > 1.0 + 1e-12) {
      throw std::domain_error("nonsteering_quadratic: correlator outside [-1, 1]");
    }
  }
  const double diff = e_xy - e_xyp;
  const double sum = e_xpy + e_xpyp;
  return diff * diff + sum * sum;
}

inline constexpr double kNonSteeringQuadraticBound = 2.0;
inline constexpr double kQuantumQuadraticBound = 4.0;

// Best <S> when the B-side difference and sum terms reach 2sin(theta/2) and
// 2cos(theta/2) independently: their sum. Peaks at 2*sqrt(2) for theta=pi/2.
inline double toy_steering_max(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw std::invalid_argument("toy_steering_max: theta must lie in [0, pi]");
  }
  return 2.0 * std::sin(theta / 2.0) + 2.0 * std::cos(theta / 2.0);
}

// Conditional probability table p(a,b|x,y) over bits, plus the fixed mapping
// between bit settings and the named observables (see pr_box below).
struct NoSignalingBox {
  // indices [a][b][x][y]
  double p[2][2][2][2];

  double conditional_sum(int x, int y) const {
    double total = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) total += p[a][b][x][y];
    return total;
  }

  double marginal_a(int a, int x, int y) const {
    return p[a][0][x][y] + p[a][1][x][y];
  }

  double marginal_b(int b, int x, int y) const {
    return p[0][b][x][y] + p[1][b][x][y];
  }

  // A-marginals independent of y, B-marginals independent of x.
  double no_signaling_defect() const {
    double worst = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a)
        worst = std::max(worst, std::abs(marginal_a(a, x, 0) - marginal_a(a, x, 1)));
    for (int y = 0; y < 2; ++y)
      for (int b = 0; b < 2; ++b)
        worst = std::max(worst, std::abs(marginal_b(b, 0, y) - marginal_b(b, 1, y)));
    return worst;
  }

  // E(x,y) = sum_ab (-1)^(a xor b) p(a,b|x,y)
  double correlator_bits(int x, int y) const {
    double e = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        e += ((a ^ b) ? -1.0 : 1.0) * p[a][b][x][y];
    return e;
  }
};

// Setting labels for the named correlators of a NoSignalingBox. The bit
// assignment X -> x=1, X' -> x=0, Y -> y=0, Y' -> y=1 places the -1
// correlator of the PR box on E(X, Y'), so the combination
// E(X,Y) - E(X,Y') + E(X',Y) + E(X',Y') evaluates to 4.
inline constexpr int kSettingBitX = 1;
inline constexpr int kSettingBitXPrime = 0;
inline constexpr int kSettingBitY = 0;
inline constexpr int kSettingBitYPrime = 1;

struct BoxCorrelators {
  double e_xy;
  double e_xyp;
  double e_xpy;
  double e_xpyp;

  double chsh_combination() const { return e_xy - e_xyp + e_xpy + e_xpyp; }
};

inline BoxCorrelators named_correlators(const NoSignalingBox& box) {
  return {box.correlator_bits(kSettingBitX, kSettingBitY),
          box.correlator_bits(kSettingBitX, kSettingBitYPrime),
          box.correlator_bits(kSettingBitXPrime, kSettingBitY),
          box.correlator_bits(kSettingBitXPrime, kSettingBitYPrime)};
}

// p(a,b|x,y) = 1/2 iff a xor b = x.y, else 0.
inline NoSignalingBox pr_box() {
  NoSignalingBox box{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          box.p[a][b][x][y] = ((a ^ b) == (x & y)) ? 0.5 : 0.0;
  return box;
}

// One random non-steering assemblage: a fixed refined ensemble {xi, sigma}
// shared between the X and X' measurements, with [-1,1]-valued response
// functions on the A side. Returns the four named correlators for the
// orthogonal pair Y = sigma_z, Y' = sigma_x.
struct NonSteeringSample {
  double e_xy;
  double e_xyp;
  double e_xpy;
  double e_xpyp;
};

inline NonSteeringSample sample_nonsteering_correlators(sampling::Rng& rng,
                                                        int ensemble_size = 4) {
  std::uniform_real_distribution<double> resp(-1.0, 1.0);
  const auto xi = sampling::simplex_point(ensemble_size, rng);
  NonSteeringSample out{0.0, 0.0, 0.0, 0.0};
  for (int lam = 0; lam < ensemble_size; ++lam) {
    const Bloch3 r = sampling::ball_bloch(rng);
    const double mean_y = r[2];   // Tr[sigma sigma_z]
    const double mean_yp = r[0];  // Tr[sigma sigma_x]
    const double a_x = resp(rng);
    const double a_xp = resp(rng);
    out.e_xy += xi[static_cast<size_t>(lam)] * a_x * mean_y;
    out.e_xyp += xi[static_cast<size_t>(lam)] * a_x * mean_yp;
    out.e_xpy += xi[static_cast<size_t>(lam)] * a_xp * mean_y;
    out.e_xpyp += xi[static_cast<size_t>(lam)] * a_xp * mean_yp;
  }
  return out;
}

}  // namespace nonlocal
