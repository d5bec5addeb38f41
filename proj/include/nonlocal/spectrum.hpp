#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "nonlocal/matrix.hpp"

namespace nonlocal {

// Real eigenvalues of a Hermitian matrix, sorted descending.
struct Spectrum {
  std::vector<double> eigenvalues;

  double largest() const { return eigenvalues.front(); }
  double smallest() const { return eigenvalues.back(); }
  double sum() const {
    double s = 0.0;
    for (double e : eigenvalues) s += e;
    return s;
  }
};

namespace detail {

inline void require_hermitian(const ComplexMatrix& a) {
  if (!a.is_hermitian()) {
    throw std::domain_error("matrix is not Hermitian within tolerance");
  }
}

inline double offdiag_norm(const ComplexMatrix& m) {
  double acc = 0.0;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c)
      if (r != c) acc += std::norm(m.at(r, c));
  return std::sqrt(acc);
}

// One complex Jacobi rotation annihilating entry (p, q), p < q.
// The 2x2 block [[a, r e^{i phi}], [r e^{-i phi}, d]] is first de-phased to a
// real symmetric block, then rotated by the classic stable tangent root.
inline ComplexMatrix jacobi_rotation(const ComplexMatrix& m, int p, int q) {
  const Complex apq = m.at(p, q);
  const double r = std::abs(apq);
  ComplexMatrix u = ComplexMatrix::identity(m.dim());
  if (r == 0.0) return u;
  const Complex phase = apq / r;
  const double a = m.at(p, p).real();
  const double d = m.at(q, q).real();
  const double chi = (a - d) / (2.0 * r);
  const double t = (chi >= 0.0) ? -1.0 / (chi + std::sqrt(chi * chi + 1.0))
                                : 1.0 / (-chi + std::sqrt(chi * chi + 1.0));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  u.at(p, p) = c;
  u.at(p, q) = s * phase;
  u.at(q, p) = -s * std::conj(phase);
  u.at(q, q) = c;
  return u;
}

inline constexpr int kJacobiSweepLimit = 100;
inline constexpr double kJacobiOffNorm = 1e-12;

}  // namespace detail

// Eigenvalues of a Hermitian 2x2 or 4x4 matrix, descending. The 2x2 case uses
// the trace/determinant closed form; 4x4 uses cyclic Jacobi rotations driven
// to off-diagonal norm <= 1e-12.
inline Spectrum hermitian_eigenvalues(const ComplexMatrix& a) {
  detail::require_hermitian(a);
  Spectrum spec;
  if (a.dim() == 2) {
    const double mean = 0.5 * (a.at(0, 0).real() + a.at(1, 1).real());
    const double half_diff = 0.5 * (a.at(0, 0).real() - a.at(1, 1).real());
    const double radius = std::hypot(half_diff, std::abs(a.at(0, 1)));
    spec.eigenvalues = {mean + radius, mean - radius};
    return spec;
  }
  ComplexMatrix m = a;
  bool converged = false;
  for (int sweep = 0; sweep < detail::kJacobiSweepLimit; ++sweep) {
    if (detail::offdiag_norm(m) <= detail::kJacobiOffNorm) {
      converged = true;
      break;
    }
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const ComplexMatrix u = detail::jacobi_rotation(m, p, q);
        m = matmul(matmul(u.dagger(), m), u);
        m.at(p, q) = 0.0;
        m.at(q, p) = 0.0;
      }
    }
  }
  if (!converged && detail::offdiag_norm(m) > detail::kJacobiOffNorm) {
    throw std::runtime_error("hermitian_eigenvalues: Jacobi sweep limit reached");
  }
  spec.eigenvalues = {m.at(0, 0).real(), m.at(1, 1).real(), m.at(2, 2).real(),
                      m.at(3, 3).real()};
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(),
            std::greater<double>());
  return spec;
}

inline constexpr double kDensityTraceTol = 1e-12;
inline constexpr double kDensityEigenTol = 1e-10;

// Hermitian, unit trace, positive semidefinite up to 1e-10.
inline bool is_valid_density(const ComplexMatrix& m) {
  if (!m.is_hermitian()) return false;
  if (std::abs(m.trace() - Complex{1.0, 0.0}) > kDensityTraceTol) return false;
  return hermitian_eigenvalues(m).smallest() >= -kDensityEigenTol;
}

// Tr[rho * obs] for a density matrix rho and Hermitian observable obs.
// The imaginary part is roundoff only and is discarded.
inline double trace_expectation(const ComplexMatrix& rho, const ComplexMatrix& obs) {
  rho.require_same_dim(obs);
  if (!is_valid_density(rho)) {
    throw std::domain_error("trace_expectation: rho is not a valid density matrix");
  }
  detail::require_hermitian(obs);
  const Complex t = matmul(rho, obs).trace();
  if (std::abs(t.imag()) > 1e-10) {
    throw std::runtime_error("trace_expectation: unexpected imaginary part");
  }
  return t.real();
}

}  // namespace nonlocal
