#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "nonlocal/qubit_scenario.hpp"
#include "nonlocal/sampling.hpp"
#include "nonlocal/spectrum.hpp"

using namespace nonlocal;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoSqrtTwo = 2.8284271247461903;
}  // namespace

TEST_CASE("observable requires a unit Bloch vector", "[scenario]") {
  REQUIRE_NOTHROW(QubitObservable({0.0, 0.0, 1.0}));
  REQUIRE_THROWS_AS(QubitObservable({0.0, 0.0, 0.5}), std::invalid_argument);
  REQUIRE_THROWS_AS(QubitObservable({1.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("observable matrix is Hermitian and traceless with unit spectrum",
          "[scenario]") {
  sampling::Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix m = QubitObservable(sampling::unit_bloch(rng)).matrix();
    REQUIRE(m.is_hermitian());
    REQUIRE(std::abs(m.trace()) < 1e-14);
    const auto spec = hermitian_eigenvalues(m);
    REQUIRE(spec.largest() == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(spec.smallest() == Catch::Approx(-1.0).margin(1e-12));
  }
}

TEST_CASE("canonical scenario at the axis angles", "[scenario]") {
  const BipartiteScenario at0 = canonical_scenario(0.0);
  REQUIRE(at0.y.matrix().max_abs_diff(pauli_z()) < 1e-15);
  REQUIRE(at0.y_prime.matrix().max_abs_diff(pauli_x()) < 1e-15);

  const BipartiteScenario at90 = canonical_scenario(kPi / 2.0);
  REQUIRE(at90.y.matrix().max_abs_diff(pauli_x()) < 1e-15);
  REQUIRE(at90.y_prime.matrix().max_abs_diff(pauli_z() * Complex{-1.0, 0.0}) <
          1e-15);
}

TEST_CASE("canonical scenario keeps both pairs orthogonal", "[scenario]") {
  for (int i = 0; i <= 40; ++i) {
    const double theta = kPi * i / 40;
    const BipartiteScenario sc = canonical_scenario(theta);
    REQUIRE(std::abs(dot(sc.x.bloch(), sc.x_prime.bloch())) < 1e-12);
    REQUIRE(std::abs(dot(sc.y.bloch(), sc.y_prime.bloch())) < 1e-12);
    REQUIRE(norm(sc.y.bloch()) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(norm(sc.y_prime.bloch()) == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("canonical scenario rejects out-of-range angles", "[scenario]") {
  REQUIRE_THROWS_AS(canonical_scenario(-0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(canonical_scenario(kPi + 0.1), std::invalid_argument);
}

TEST_CASE("singlet normalization and anticorrelation", "[scenario]") {
  const DensityMatrix rho = singlet();
  REQUIRE(std::abs(rho.mat().trace() - Complex{1.0, 0.0}) < 1e-15);
  const QubitObservable z({0.0, 0.0, 1.0});
  REQUIRE(correlator(rho, z, z) == Catch::Approx(-1.0).margin(1e-14));
}

TEST_CASE("singlet rotational covariance", "[scenario]") {
  sampling::Rng rng(314);
  const DensityMatrix rho = singlet();
  for (int i = 0; i < 100; ++i) {
    const Bloch3 a = sampling::unit_bloch(rng);
    const Bloch3 b = sampling::unit_bloch(rng);
    REQUIRE(correlator(rho, QubitObservable(a), QubitObservable(b)) ==
            Catch::Approx(-dot(a, b)).margin(1e-10));
  }
}

TEST_CASE("product states", "[scenario]") {
  const DensityMatrix mixed = product_state({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0});
  REQUIRE(mixed.mat().max_abs_diff(ComplexMatrix::identity(4) *
                                   Complex{0.25, 0.0}) < 1e-15);

  const DensityMatrix up = product_state({0.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
  const QubitObservable z({0.0, 0.0, 1.0});
  REQUIRE(correlator(up, z, z) == Catch::Approx(1.0).margin(1e-14));

  REQUIRE_THROWS_AS(product_state({0.0, 0.0, 1.1}, {0.0, 0.0, 0.0}),
                    std::domain_error);
}

TEST_CASE("product-state correlators factorize", "[scenario]") {
  sampling::Rng rng(2718);
  for (int i = 0; i < 50; ++i) {
    const Bloch3 a = sampling::unit_bloch(rng);
    const Bloch3 b = sampling::unit_bloch(rng);
    const Bloch3 x = sampling::unit_bloch(rng);
    const Bloch3 y = sampling::unit_bloch(rng);
    const DensityMatrix rho = product_state(a, b);
    REQUIRE(correlator(rho, QubitObservable(x), QubitObservable(y)) ==
            Catch::Approx(dot(x, a) * dot(y, b)).margin(1e-12));
  }
}

TEST_CASE("correlator bounds and dim checks", "[scenario]") {
  const QubitObservable z({0.0, 0.0, 1.0});
  REQUIRE(correlator(maximally_mixed(4), z, z) ==
          Catch::Approx(0.0).margin(1e-14));
  REQUIRE_THROWS_AS(correlator(maximally_mixed(2), z, z),
                    std::invalid_argument);
}

TEST_CASE("density matrix constructor validates", "[scenario]") {
  REQUIRE_THROWS_AS(DensityMatrix(ComplexMatrix::identity(4)),
                    std::domain_error);
  REQUIRE_THROWS_AS(qubit_state({0.0, 0.0, 1.5}), std::domain_error);
  REQUIRE_NOTHROW(qubit_state({0.6, 0.0, 0.8}));
}

TEST_CASE("S is Hermitian and traceless with mean -2(cos+sin) on the singlet",
          "[scenario]") {
  const DensityMatrix rho = singlet();
  for (int i = 0; i <= 50; ++i) {
    const double theta = kPi / 2.0 * i / 50;
    const ComplexMatrix s = s_operator(canonical_scenario(theta));
    REQUIRE(s.is_hermitian());
    REQUIRE(std::abs(s.trace()) < 1e-14);
    REQUIRE(moment(rho, s, 1) ==
            Catch::Approx(-2.0 * (std::cos(theta) + std::sin(theta)))
                .margin(1e-12));
  }
  const ComplexMatrix s = s_operator(canonical_scenario(kPi / 4.0));
  REQUIRE(moment(rho, s, 1) == Catch::Approx(-kTwoSqrtTwo).margin(1e-12));
}

TEST_CASE("singlet moments", "[scenario]") {
  const DensityMatrix rho = singlet();
  for (int i = 0; i <= 20; ++i) {
    const double theta = kPi / 2.0 * i / 20;
    const BipartiteScenario sc = canonical_scenario(theta);
    const ComplexMatrix s = s_operator(sc);
    const double m1 = moment(rho, s, 1);
    const double sum = correlator(rho, sc.x, sc.y) -
                       correlator(rho, sc.x, sc.y_prime) +
                       correlator(rho, sc.x_prime, sc.y) +
                       correlator(rho, sc.x_prime, sc.y_prime);
    REQUIRE(m1 == Catch::Approx(sum).margin(1e-12));
    REQUIRE(moment(rho, s, 2) == Catch::Approx(8.0).margin(1e-12));
    REQUIRE(moment(rho, s, 3) == Catch::Approx(8.0 * m1).margin(1e-12));
  }
}

TEST_CASE("moment order limits", "[scenario]") {
  const ComplexMatrix s = s_operator(canonical_scenario(0.3));
  REQUIRE_THROWS_AS(moment(singlet(), s, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(moment(singlet(), s, 9), std::invalid_argument);
  REQUIRE_NOTHROW(moment(singlet(), s, 8));
}

TEST_CASE("operator identity for S squared", "[scenario]") {
  for (int i = 0; i < 50; ++i) {
    const double theta = kPi * i / 49;
    const BipartiteScenario sc = canonical_scenario(theta);
    const ComplexMatrix s = s_operator(sc);
    const ComplexMatrix rhs =
        ComplexMatrix::identity(4) * Complex{4.0, 0.0} +
        kron(commutator(sc.x.matrix(), sc.x_prime.matrix()),
             commutator(sc.y.matrix(), sc.y_prime.matrix()));
    REQUIRE(matmul(s, s).max_abs_diff(rhs) < 1e-12);
  }
}

TEST_CASE("operator identity for S cubed", "[scenario]") {
  for (int i = 0; i < 50; ++i) {
    const double theta = kPi * i / 49;
    const ComplexMatrix s = s_operator(canonical_scenario(theta));
    REQUIRE(matmul(matmul(s, s), s).max_abs_diff(s * Complex{8.0, 0.0}) <
            1e-12);
  }
}

TEST_CASE("spectrum of S hits the quantum ceiling at every angle",
          "[scenario]") {
  for (int i = 0; i < 30; ++i) {
    const double theta = kPi * i / 29;
    const auto spec = hermitian_eigenvalues(s_operator(canonical_scenario(theta)));
    REQUIRE(spec.largest() == Catch::Approx(kTwoSqrtTwo).margin(1e-9));
    REQUIRE(spec.eigenvalues[0] == Catch::Approx(-spec.eigenvalues[3]).margin(1e-9));
    REQUIRE(spec.eigenvalues[1] == Catch::Approx(-spec.eigenvalues[2]).margin(1e-9));
  }
}

TEST_CASE("correlators stay within [-1, 1] on random states", "[scenario]") {
  sampling::Rng rng(161803);
  for (int i = 0; i < 100; ++i) {
    const ComplexMatrix h = sampling::hermitian(4, rng);
    const ComplexMatrix sq = matmul(h, h);
    const DensityMatrix rho(sq * Complex{1.0 / sq.trace().real(), 0.0});
    const double e = correlator(rho, QubitObservable(sampling::unit_bloch(rng)),
                                QubitObservable(sampling::unit_bloch(rng)));
    REQUIRE(std::abs(e) <= 1.0 + 1e-12);
  }
}
