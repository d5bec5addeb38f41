// Walks the correlation-model ladder: classical mixtures, the steering toy
// model, the quantum singlet, and the no-signaling box, printing the CHSH
// reach of each together with the quadratic-form bounds.

#include <cstdio>

#include "nonlocal/nonlocal.hpp"

int main() {
  using namespace nonlocal;

  const auto [lhvt_lo, lhvt_hi] = lhvt_chsh_range();
  std::printf("classical mixtures     |<S>| <= %.6f\n", lhvt_hi);

  auto [steer_arg, steer_peak] = golden_section_max(
      [](double t) { return toy_steering_max(t); }, 0.0, std::numbers::pi,
      1e-10);
  std::printf("steering toy model     peak %.6f at theta %.6f\n", steer_peak,
              steer_arg);

  const DensityMatrix rho = singlet();
  const ComplexMatrix s = s_operator(canonical_scenario(std::numbers::pi / 4.0));
  std::printf("quantum singlet        |<S>| = %.6f at theta pi/4\n",
              std::abs(moment(rho, s, 1)));

  const auto e = named_correlators(pr_box());
  std::printf("no-signaling box       combination = %.6f\n",
              e.chsh_combination());

  const BipartiteScenario sc = canonical_scenario(std::numbers::pi / 4.0);
  const double q = nonsteering_quadratic(
      correlator(rho, sc.x, sc.y), correlator(rho, sc.x, sc.y_prime),
      correlator(rho, sc.x_prime, sc.y),
      correlator(rho, sc.x_prime, sc.y_prime));
  std::printf("\nquadratic form: singlet %.6f vs non-steering cap %.1f, "
              "quantum cap %.1f\n",
              q, kNonSteeringQuadraticBound, kQuantumQuadraticBound);

  sampling::Rng rng(sampling::kDefaultSeed);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const auto c = sample_nonsteering_correlators(rng);
    worst = std::max(worst,
                     nonsteering_quadratic(c.e_xy, c.e_xyp, c.e_xpy, c.e_xpyp));
  }
  std::printf("2000 sampled non-steering ensembles: max quadratic %.6f\n",
              worst);
  return 0;
}
