#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nonlocal/bloch.hpp"
#include "nonlocal/matrix.hpp"
#include "nonlocal/spectrum.hpp"

namespace nonlocal {

// A +/-1-eigenvalue Hermitian qubit observable, stored as its unit Bloch
// vector and materialized to a matrix on demand.
class QubitObservable {
 public:
  explicit QubitObservable(const Bloch3& bloch) : bloch_(bloch) {
    if (std::abs(norm(bloch) - 1.0) > 1e-12) {
      throw std::invalid_argument("QubitObservable: Bloch vector must be unit");
    }
  }

  const Bloch3& bloch() const { return bloch_; }

  ComplexMatrix matrix() const { return bloch_dot_sigma(bloch_); }

 private:
  Bloch3 bloch_;
};

// Validated density matrix (dim 2 or 4): Hermitian, unit trace, PSD.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m) : mat_(m) {
    if (!is_valid_density(m)) {
      throw std::domain_error("DensityMatrix: not a valid density matrix");
    }
  }

  const ComplexMatrix& mat() const { return mat_; }
  int dim() const { return mat_.dim(); }

 private:
  ComplexMatrix mat_;
};

// Expectation Tr[rho * obs]; rho is pre-validated so no density check here.
inline double expectation(const DensityMatrix& rho, const ComplexMatrix& obs) {
  rho.mat().require_same_dim(obs);
  return matmul(rho.mat(), obs).trace().real();
}

// The two measurement pairs (X, X'; Y, Y'), the angle theta between X and Y,
// and the coefficients m_ij of the joint observable S = sum m_ij Xi (x) Yj.
struct BipartiteScenario {
  QubitObservable x;
  QubitObservable x_prime;
  QubitObservable y;
  QubitObservable y_prime;
  double theta = 0.0;
  // default reproduces S = X(x)Y - X(x)Y' + X'(x)Y + X'(x)Y'
  std::array<std::array<double, 2>, 2> s_coefficients{{{{1.0, -1.0}}, {{1.0, 1.0}}}};
};

// X = sigma_z, X' = sigma_x, Y = sin(theta) sigma_x + cos(theta) sigma_z,
// Y' = cos(theta) sigma_x - sin(theta) sigma_z. Both pairs are orthogonal.
inline BipartiteScenario canonical_scenario(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw std::invalid_argument("canonical_scenario: theta must lie in [0, pi]");
  }
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  return BipartiteScenario{QubitObservable{{0.0, 0.0, 1.0}},
                           QubitObservable{{1.0, 0.0, 0.0}},
                           QubitObservable{{st, 0.0, ct}},
                           QubitObservable{{ct, 0.0, -st}},
                           theta};
}

// Rank-1 projector onto (|+-> - |-+>)/sqrt(2) in the sigma_z product basis.
inline DensityMatrix singlet() {
  ComplexMatrix m(4);
  m.at(1, 1) = 0.5;
  m.at(2, 2) = 0.5;
  m.at(1, 2) = -0.5;
  m.at(2, 1) = -0.5;
  return DensityMatrix{m};
}

// Single-qubit state (1 + r.sigma)/2 with |r| <= 1.
inline DensityMatrix qubit_state(const Bloch3& r) {
  if (norm(r) > 1.0 + 1e-12) {
    throw std::domain_error("qubit_state: Bloch norm exceeds 1");
  }
  const ComplexMatrix m =
      (ComplexMatrix::identity(2) + bloch_dot_sigma(r)) * Complex{0.5, 0.0};
  return DensityMatrix{m};
}

// Product of two single-qubit states.
inline DensityMatrix product_state(const Bloch3& bloch_a, const Bloch3& bloch_b) {
  if (norm(bloch_a) > 1.0 + 1e-12 || norm(bloch_b) > 1.0 + 1e-12) {
    throw std::domain_error("product_state: Bloch norm exceeds 1");
  }
  const ComplexMatrix a =
      (ComplexMatrix::identity(2) + bloch_dot_sigma(bloch_a)) * Complex{0.5, 0.0};
  const ComplexMatrix b =
      (ComplexMatrix::identity(2) + bloch_dot_sigma(bloch_b)) * Complex{0.5, 0.0};
  return DensityMatrix{kron(a, b)};
}

inline DensityMatrix maximally_mixed(int dim) {
  return DensityMatrix{ComplexMatrix::identity(dim) * Complex{1.0 / dim, 0.0}};
}

// E(A, B) = Tr[rho (A (x) B)]
inline double correlator(const DensityMatrix& rho, const QubitObservable& a,
                         const QubitObservable& b) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("correlator: rho must be a two-qubit state");
  }
  return expectation(rho, kron(a.matrix(), b.matrix()));
}

inline ComplexMatrix s_operator(const BipartiteScenario& sc) {
  const ComplexMatrix xs[2] = {sc.x.matrix(), sc.x_prime.matrix()};
  const ComplexMatrix ys[2] = {sc.y.matrix(), sc.y_prime.matrix()};
  ComplexMatrix s(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      s = s + kron(xs[i], ys[j]) * Complex{sc.s_coefficients[i][j], 0.0};
  return s;
}

// Tr[rho S^k] via repeated multiplication, 1 <= k <= 8.
inline double moment(const DensityMatrix& rho, const ComplexMatrix& s, int k) {
  if (k < 1 || k > 8) {
    throw std::invalid_argument("moment: order must lie in [1, 8], got " +
                                std::to_string(k));
  }
  ComplexMatrix power = s;
  for (int i = 1; i < k; ++i) power = matmul(power, s);
  return expectation(rho, power);
}

}  // namespace nonlocal
