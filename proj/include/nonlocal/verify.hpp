#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "nonlocal/cumulants.hpp"
#include "nonlocal/hv_models.hpp"
#include "nonlocal/qubit_scenario.hpp"
#include "nonlocal/sampling.hpp"
#include "nonlocal/uncertainty.hpp"

namespace nonlocal {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = sampling::kDefaultSeed;
  // Test hook: flips the sign of the X(x)Y' coefficient of S so the
  // operator identities break and the failure path is exercised.
  bool flip_s_sign = false;
};

namespace detail {

inline std::string fmt(const char* pattern, double v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

inline DensityMatrix random_density(int dim, sampling::Rng& rng) {
  for (;;) {
    const ComplexMatrix h = sampling::hermitian(dim, rng);
    const ComplexMatrix sq = matmul(h, h);
    const double tr = sq.trace().real();
    if (tr > 1e-6) return DensityMatrix{sq * Complex{1.0 / tr, 0.0}};
  }
}

}  // namespace detail

inline std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  const double pi = std::numbers::pi;
  sampling::Rng rng(opts.seed);
  std::vector<CheckResult> results;
  auto add = [&](const std::string& name, bool passed, const std::string& detail) {
    results.push_back({name, passed, detail});
  };
  auto make_s = [&](double theta) {
    BipartiteScenario sc = canonical_scenario(theta);
    if (opts.flip_s_sign) sc.s_coefficients[0][1] = 1.0;
    return s_operator(sc);
  };

  // S^2 = 4*I + [X,X'] (x) [Y,Y'] across the theta range
  {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double theta = pi * i / 49;
      const BipartiteScenario sc = canonical_scenario(theta);
      const ComplexMatrix s = make_s(theta);
      const ComplexMatrix rhs =
          ComplexMatrix::identity(4) * Complex{4.0, 0.0} +
          kron(commutator(sc.x.matrix(), sc.x_prime.matrix()),
               commutator(sc.y.matrix(), sc.y_prime.matrix()));
      worst = std::max(worst, matmul(s, s).max_abs_diff(rhs));
    }
    add("s2-operator-identity", worst <= 1e-12,
        detail::fmt("max entrywise defect %.3g", worst));
  }

  // S^3 = 8 S for the orthogonal configuration
  {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double theta = pi * i / 49;
      const ComplexMatrix s = make_s(theta);
      worst = std::max(worst, matmul(matmul(s, s), s).max_abs_diff(
                                  s * Complex{8.0, 0.0}));
    }
    add("s3-operator-identity", worst <= 1e-12,
        detail::fmt("max entrywise defect %.3g", worst));
  }

  // E(a, b) = -a.b on the singlet
  {
    double worst = 0.0;
    const DensityMatrix rho = singlet();
    for (int i = 0; i < 100; ++i) {
      const Bloch3 a = sampling::unit_bloch(rng);
      const Bloch3 b = sampling::unit_bloch(rng);
      const double e = correlator(rho, QubitObservable(a), QubitObservable(b));
      worst = std::max(worst, std::abs(e + dot(a, b)));
    }
    add("singlet-covariance", worst <= 1e-10,
        detail::fmt("max |E(a,b) + a.b| = %.3g", worst));
  }

  // spectrum of S: symmetric about 0 with top eigenvalue 2*sqrt(2)
  {
    double worst_top = 0.0, worst_sym = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double theta = pi * i / 49;
      const auto spec = hermitian_eigenvalues(make_s(theta));
      worst_top =
          std::max(worst_top, std::abs(spec.largest() - kChshQuantumMax));
      worst_sym = std::max(
          {worst_sym, std::abs(spec.eigenvalues[0] + spec.eigenvalues[3]),
           std::abs(spec.eigenvalues[1] + spec.eigenvalues[2])});
    }
    add("s-spectrum-tsirelson", worst_top <= 1e-9 && worst_sym <= 1e-9,
        detail::fmt("top defect %.3g", worst_top) +
            detail::fmt(", symmetry defect %.3g", worst_sym));
  }

  // singlet moment identities: m1 sums correlators, m2 = 8, m3 = 8 m1
  {
    double worst = 0.0;
    const DensityMatrix rho = singlet();
    for (int i = 0; i < 25; ++i) {
      const double theta = pi / 2.0 * i / 24;
      const BipartiteScenario sc = canonical_scenario(theta);
      const ComplexMatrix s = s_operator(sc);
      const double m1 = moment(rho, s, 1);
      const double sum = correlator(rho, sc.x, sc.y) -
                         correlator(rho, sc.x, sc.y_prime) +
                         correlator(rho, sc.x_prime, sc.y) +
                         correlator(rho, sc.x_prime, sc.y_prime);
      worst = std::max({worst, std::abs(m1 - sum),
                        std::abs(moment(rho, s, 2) - 8.0),
                        std::abs(moment(rho, s, 3) - 8.0 * m1)});
    }
    add("singlet-moment-identities", worst <= 1e-12,
        detail::fmt("max defect %.3g", worst));
  }

  // |E| <= 1 for random states and observables
  {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const DensityMatrix rho = detail::random_density(4, rng);
      const double e = correlator(rho, QubitObservable(sampling::unit_bloch(rng)),
                                  QubitObservable(sampling::unit_bloch(rng)));
      worst = std::max(worst, std::abs(e));
    }
    add("correlator-range", worst <= 1.0 + 1e-12,
        detail::fmt("max |E| = %.15g", worst));
  }

  // concatenated outcome distributions stay under the majorization cap
  {
    double worst = -1.0;
    for (int t = 0; t < 20; ++t) {
      const double theta = pi / 2.0 * t / 19;
      const auto pair = observable_pair_at_angle(theta);
      const auto bound = majorization_bound(theta);
      for (int i = 0; i < 200; ++i) {
        const DensityMatrix rho = qubit_state(sampling::unit_bloch(rng));
        worst = std::max(worst,
                         majorization_slack(measurement_distributions(rho, pair),
                                            bound));
      }
    }
    add("majorization-random-states", worst <= kMajorizationTol,
        detail::fmt("worst prefix slack %.3g", worst));
  }

  // the cap flattens as the angle grows
  {
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
      for (int j = i; j < 20 && ok; ++j) {
        const double lo = pi / 2.0 * i / 19;  // smaller angle: sharper cap
        const double hi = pi / 2.0 * j / 19;
        ok = vector_majorizes(majorization_bound(lo).s, majorization_bound(hi).s);
      }
    }
    add("majorization-cap-antitone", ok, ok ? "all angle pairs ordered" : "ordering broken");
  }

  // closed-form expectation bounds equal the top eigenvalues and are
  // saturated by the sphere maximizer
  {
    double worst_eig = 0.0, worst_sat = 0.0;
    for (int t = 0; t < 20; ++t) {
      const double theta = pi / 2.0 * t / 19;
      const auto pair = observable_pair_at_angle(theta);
      const ComplexMatrix sum_op = pair.y.matrix() + pair.y_prime.matrix();
      const ComplexMatrix diff_op = pair.y.matrix() - pair.y_prime.matrix();
      worst_eig = std::max(
          {worst_eig,
           std::abs(hermitian_eigenvalues(sum_op).largest() -
                    expectation_sum_bound(theta)),
           std::abs(hermitian_eigenvalues(diff_op).largest() -
                    expectation_diff_bound(theta))});
      if (t % 4 == 0) {
        worst_sat = std::max(
            {worst_sat,
             std::abs(sphere_expectation_max(sum_op) -
                      expectation_sum_bound(theta)),
             std::abs(sphere_expectation_max(diff_op) -
                      expectation_diff_bound(theta))});
      }
    }
    add("expectation-bound-matches-eigenvalue", worst_eig <= 1e-12,
        detail::fmt("max eigenvalue defect %.3g", worst_eig));
    add("expectation-bound-saturated", worst_sat <= 1e-6,
        detail::fmt("max saturation gap %.3g", worst_sat));
  }

  // partial-sum eigenvalue inequality on random Hermitian pairs
  {
    double worst = -1.0, worst_trace = 0.0;
    for (int i = 0; i < 500; ++i) {
      const int dim = (i % 2 == 0) ? 2 : 4;
      const ComplexMatrix a = sampling::hermitian(dim, rng);
      const ComplexMatrix b = sampling::hermitian(dim, rng);
      worst = std::max(worst, horn_defect(a, b));
      const double full = hermitian_eigenvalues(a).sum() +
                          hermitian_eigenvalues(b).sum() -
                          hermitian_eigenvalues(a + b).sum();
      worst_trace = std::max(worst_trace, std::abs(full));
    }
    add("horn-random-pairs", worst <= kHornTol,
        detail::fmt("worst partial-sum defect %.3g", worst));
    add("horn-trace-equality", worst_trace <= 1e-10,
        detail::fmt("worst full-sum defect %.3g", worst_trace));
  }

  // the orthogonal-pair instance: sqrt(2) + sqrt(2) >= 2
  {
    const auto pair = observable_pair_at_angle(pi / 2.0);
    const ComplexMatrix diff = pair.y.matrix() - pair.y_prime.matrix();
    const ComplexMatrix sum = pair.y.matrix() + pair.y_prime.matrix();
    const double a1 = hermitian_eigenvalues(diff).largest();
    const double b1 = hermitian_eigenvalues(sum).largest();
    const double g1 = hermitian_eigenvalues(diff + sum).largest();
    const bool ok = std::abs(a1 - std::numbers::sqrt2) <= 1e-12 &&
                    std::abs(b1 - std::numbers::sqrt2) <= 1e-12 &&
                    std::abs(g1 - 2.0) <= 1e-12 && a1 + b1 >= g1 &&
                    horn_check(diff, sum, 1);
    add("horn-orthogonal-instance", ok,
        detail::fmt("alpha1 %.12g", a1) + detail::fmt(", gamma1 %.12g", g1));
  }

  // strategy enumeration: 16 distinct entries, values only +/-2, hull [-2, 2]
  {
    const auto strategies = enumerate_strategies();
    bool ok = strategies.size() == 16;
    int distinct = 0;
    for (size_t i = 0; i < strategies.size(); ++i) {
      bool dup = false;
      for (size_t j = 0; j < i; ++j) {
        const auto& a = strategies[i];
        const auto& b = strategies[j];
        dup = dup || (a.a_x == b.a_x && a.a_xp == b.a_xp && a.b_y == b.b_y &&
                      a.b_yp == b.b_yp);
      }
      if (!dup) ++distinct;
      const double v = strategies[i].s_value();
      ok = ok && (v == 2.0 || v == -2.0);
    }
    const auto [lo, hi] = lhvt_chsh_range();
    ok = ok && distinct == 16 && lo == -2.0 && hi == 2.0;
    add("lhvt-enumeration", ok,
        detail::fmt("distinct %.0f", double(distinct)) +
            detail::fmt(", range max %.12g", hi));
  }

  // classical closed forms kappa2 = 4 - s^2, kappa3 = 2 s^3 - 8 s
  {
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      HiddenVariableMixture mix{};
      const auto w = sampling::simplex_point(16, rng);
      for (size_t k = 0; k < 16; ++k) mix.weights[k] = w[k];
      const auto dist = lhvt_s_distribution(mix);
      const double s = dist.mean();
      std::vector<double> m{dist.moment(1), dist.moment(2), dist.moment(3)};
      const auto kappa = cumulants_from_moments(m);
      worst = std::max({worst, std::abs(m[1] - 4.0),
                        std::abs(kappa[1] - lhvt_kappa2(s)),
                        std::abs(kappa[2] - lhvt_kappa3(s))});
    }
    add("lhvt-cumulant-closed-forms", worst <= 1e-12,
        detail::fmt("max defect %.3g", worst));
  }

  // classical cumulant ranges over random mixtures
  {
    double worst_k2_low = 0.0, worst_k2_high = 0.0, worst_k3 = 0.0;
    for (int i = 0; i < 100000; ++i) {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const double p = unit(rng);
      const double k2 = two_point_cumulant(p, 2);
      const double k3 = two_point_cumulant(p, 3);
      worst_k2_low = std::min(worst_k2_low, k2);
      worst_k2_high = std::max(worst_k2_high, k2);
      worst_k3 = std::max(worst_k3, std::abs(k3));
    }
    const bool ok = worst_k2_low >= -1e-12 && worst_k2_high <= 4.0 + 1e-12 &&
                    worst_k3 <= kKappa3ClassicalExtreme + 1e-9;
    add("lhvt-cumulant-ranges", ok,
        detail::fmt("max |kappa3| %.12g", worst_k3));
  }

  // classical bound optimizer against the known extremes
  {
    const CumulantBounds k2 = lhvt_cumulant_bounds(2);
    const CumulantBounds k3 = lhvt_cumulant_bounds(3);
    const CumulantBounds k4 = lhvt_cumulant_bounds(4);
    const bool ok =
        std::abs(k2.m_minus) <= 1e-9 && std::abs(k2.m_plus - 4.0) <= 1e-9 &&
        std::abs(k3.m_minus + kKappa3ClassicalExtreme) <= 1e-9 &&
        std::abs(k3.m_plus - kKappa3ClassicalExtreme) <= 1e-9 &&
        std::abs(k3.argmin_mean_s - kKappa3ExtremeMean) <= 1e-6 &&
        std::abs(k3.argmax_mean_s + kKappa3ExtremeMean) <= 1e-6 &&
        std::abs(k4.m_minus + 32.0) <= 1e-7 &&
        std::abs(k4.m_plus - 32.0 / 3.0) <= 1e-7;
    add("lhvt-cumulant-bounds", ok,
        detail::fmt("kappa3 max %.12g", k3.m_plus) +
            detail::fmt(" at mean %.9g", k3.argmax_mean_s));
  }

  // point-mass mixtures have vanishing cumulants beyond the first
  {
    double worst = 0.0;
    for (int sign = 0; sign < 2; ++sign) {
      const double p = sign == 0 ? 1.0 : 0.0;
      for (int n = 2; n <= kMaxCumulantOrder; ++n) {
        worst = std::max(worst, std::abs(two_point_cumulant(p, n)));
      }
    }
    add("point-mass-cumulants", worst <= 1e-9,
        detail::fmt("max |kappa| %.3g", worst));
  }

  // PR box: combination 4, no signaling, normalized conditionals
  {
    const NoSignalingBox box = pr_box();
    const auto e = named_correlators(box);
    double norm_defect = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        norm_defect =
            std::max(norm_defect, std::abs(box.conditional_sum(x, y) - 1.0));
    const bool ok = e.chsh_combination() == 4.0 &&
                    box.no_signaling_defect() <= 1e-12 && norm_defect <= 1e-12;
    add("pr-box-superquantum", ok,
        detail::fmt("combination %.12g", e.chsh_combination()) +
            detail::fmt(", signaling defect %.3g", box.no_signaling_defect()));
  }

  // steering toy model peaks at 2*sqrt(2)
  {
    auto [arg, peak] = golden_section_max(
        [](double t) { return toy_steering_max(t); }, 0.0, pi, 1e-10);
    const bool ok = std::abs(peak - kChshQuantumMax) <= 1e-12 &&
                    std::abs(arg - pi / 2.0) <= 1e-6 &&
                    std::abs(toy_steering_max(0.0) - 2.0) <= 1e-15;
    add("toy-steering-peak", ok,
        detail::fmt("peak %.15g", peak) + detail::fmt(" at theta %.9g", arg));
  }

  // fixed-ensemble correlations respect the quadratic bound 2
  {
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const auto s = sample_nonsteering_correlators(rng);
      worst = std::max(worst, nonsteering_quadratic(s.e_xy, s.e_xyp, s.e_xpy,
                                                    s.e_xpyp));
    }
    add("nonsteering-quadratic-bound", worst <= kNonSteeringQuadraticBound + 1e-9,
        detail::fmt("max quadratic form %.12g", worst));
  }

  // the singlet with orthogonal B observables saturates the quantum bound 4
  {
    const BipartiteScenario sc = canonical_scenario(pi / 4.0);
    const DensityMatrix rho = singlet();
    const double q = nonsteering_quadratic(
        correlator(rho, sc.x, sc.y), correlator(rho, sc.x, sc.y_prime),
        correlator(rho, sc.x_prime, sc.y),
        correlator(rho, sc.x_prime, sc.y_prime));
    const bool ok = std::abs(q - kQuantumQuadraticBound) <= 1e-12 &&
                    q > kNonSteeringQuadraticBound;
    add("quantum-quadratic-saturation", ok,
        detail::fmt("quadratic form %.15g", q));
  }

  // quantum closed forms from matrix powers
  {
    double worst = 0.0;
    const DensityMatrix rho = singlet();
    for (int i = 0; i < 200; ++i) {
      const double theta = pi / 2.0 * i / 199;
      const ComplexMatrix s = s_operator(canonical_scenario(theta));
      std::vector<double> m{moment(rho, s, 1), moment(rho, s, 2),
                            moment(rho, s, 3)};
      const auto kappa = cumulants_from_moments(m);
      worst = std::max({worst, std::abs(kappa[1] - singlet_kappa2(m[0])),
                        std::abs(kappa[2] - singlet_kappa3(m[0]))});
    }
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    for (int i = 0; i < 50; ++i) {
      const double theta = pi / 2.0 * (i % 20) / 19;
      const double pa = angle(rng), pb = angle(rng);
      const DensityMatrix prod = product_state(
          {std::sin(pa), 0.0, std::cos(pa)}, {std::sin(pb), 0.0, std::cos(pb)});
      const ComplexMatrix s = s_operator(canonical_scenario(theta));
      std::vector<double> m{moment(prod, s, 1), moment(prod, s, 2),
                            moment(prod, s, 3)};
      const auto kappa = cumulants_from_moments(m);
      worst = std::max({worst, std::abs(kappa[1] - product_kappa2(m[0])),
                        std::abs(kappa[2] - product_kappa3(m[0]))});
    }
    add("quantum-cumulant-closed-forms", worst <= 1e-9,
        detail::fmt("max defect %.3g", worst));
  }

  // witnesses: always at least one fires strictly inside (0, pi/2)
  {
    bool ok = true;
    double worst_margin = 1.0;
    for (int i = 1; i <= 500 && ok; ++i) {
      const double theta = pi / 2.0 * i / 501;
      const double s = -2.0 * (std::cos(theta) + std::sin(theta));
      const auto chsh = chsh_witness(s);
      const auto skew = skewness_witness(s);
      if (chsh.violated || skew.violated) continue;
      const double margin_chsh = std::abs(chsh.value - kChshClassicalBound);
      const double margin_skew = std::abs(skew.value - kSkewnessClassicalBound);
      worst_margin = std::min(worst_margin, std::max(margin_chsh, margin_skew));
      ok = margin_chsh < 1e-6 && margin_skew < 1e-6;
    }
    add("witness-union-coverage", ok,
        ok ? "all grid points covered" : detail::fmt("margin %.3g", worst_margin));
  }

  // normalized sum/difference coordinates stay inside the unit disk
  {
    const double max_norm = constraint_norm_max(rng);
    const auto pair = observable_pair_at_angle(pi / 2.0);
    const double mixed_norm =
        constraint_coordinates(maximally_mixed(2), pair).norm_squared();
    const bool ok = std::abs(max_norm - 1.0) <= 1e-10 && mixed_norm <= 1e-15;
    add("constraint-disk", ok, detail::fmt("max norm %.12g", max_norm));
  }

  // tensor-product algebra identities on random matrices
  {
    double worst_mul = 0.0, worst_trace = 0.0, worst_eig = 0.0;
    for (int i = 0; i < 50; ++i) {
      const ComplexMatrix a = sampling::hermitian(2, rng);
      const ComplexMatrix b = sampling::hermitian(2, rng);
      const ComplexMatrix c = sampling::hermitian(2, rng);
      const ComplexMatrix d = sampling::hermitian(2, rng);
      worst_mul = std::max(worst_mul, matmul(kron(a, b), kron(c, d))
                                          .max_abs_diff(kron(matmul(a, c),
                                                             matmul(b, d))));
      worst_trace =
          std::max(worst_trace, std::abs(kron(a, b).trace() -
                                         a.trace() * b.trace()));
      const auto ea = hermitian_eigenvalues(a).eigenvalues;
      const auto eb = hermitian_eigenvalues(b).eigenvalues;
      std::vector<double> products;
      for (double x : ea)
        for (double y : eb) products.push_back(x * y);
      std::sort(products.begin(), products.end(), std::greater<double>());
      const auto ek = hermitian_eigenvalues(kron(a, b)).eigenvalues;
      for (size_t k = 0; k < ek.size(); ++k) {
        worst_eig = std::max(worst_eig, std::abs(ek[k] - products[k]));
      }
    }
    const bool ok = worst_mul <= 1e-12 && worst_trace <= 1e-12 && worst_eig <= 1e-9;
    add("kron-identities", ok,
        detail::fmt("mixed-product defect %.3g", worst_mul) +
            detail::fmt(", eigenvalue defect %.3g", worst_eig));
  }

  return results;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace nonlocal
