#pragma once

#include <array>
#include <cmath>

#include "nonlocal/matrix.hpp"

namespace nonlocal {

using Bloch3 = std::array<double, 3>;

inline double dot(const Bloch3& a, const Bloch3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Bloch3& a) { return std::sqrt(dot(a, a)); }

inline Bloch3 cross(const Bloch3& a, const Bloch3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline Bloch3 scaled(const Bloch3& a, double f) {
  return {a[0] * f, a[1] * f, a[2] * f};
}

inline Bloch3 plus(const Bloch3& a, const Bloch3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Bloch3 minus(const Bloch3& a, const Bloch3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

// r . (sigma_x, sigma_y, sigma_z)
inline ComplexMatrix bloch_dot_sigma(const Bloch3& r) {
  ComplexMatrix m(2);
  m.at(0, 0) = Complex{r[2], 0.0};
  m.at(1, 1) = Complex{-r[2], 0.0};
  m.at(0, 1) = Complex{r[0], -r[1]};
  m.at(1, 0) = Complex{r[0], r[1]};
  return m;
}

}  // namespace nonlocal
