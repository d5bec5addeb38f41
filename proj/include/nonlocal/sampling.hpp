#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "nonlocal/bloch.hpp"
#include "nonlocal/matrix.hpp"

namespace nonlocal::sampling {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 0x5eedc0ffee;

// Uniform on the unit sphere.
inline Bloch3 unit_bloch(Rng& rng) {
  std::uniform_real_distribution<double> uz(-1.0, 1.0);
  std::uniform_real_distribution<double> uphi(0.0, 2.0 * std::numbers::pi);
  const double z = uz(rng);
  const double phi = uphi(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

// Uniform in the closed unit ball.
inline Bloch3 ball_bloch(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return scaled(unit_bloch(rng), std::cbrt(u(rng)));
}

// Random Hermitian matrix with entries of order one.
inline ComplexMatrix hermitian(int dim, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    m.at(r, r) = Complex{u(rng), 0.0};
    for (int c = r + 1; c < dim; ++c) {
      const Complex v{u(rng), u(rng)};
      m.at(r, c) = v;
      m.at(c, r) = std::conj(v);
    }
  }
  return m;
}

// Random probability vector of length n (normalized exponentials).
inline std::vector<double> simplex_point(int n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(static_cast<size_t>(n));
  double total = 0.0;
  for (double& x : w) {
    x = e(rng);
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace nonlocal::sampling
