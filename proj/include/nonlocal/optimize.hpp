#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace nonlocal {

// Golden-section search for the maximum of a unimodal f on [lo, hi].
// Returns {argmax, max}. Resolution is on the argument, not the value.
inline std::pair<double, double> golden_section_max(
    const std::function<double(double)>& f, double lo, double hi,
    double x_tol = 1e-10) {
  if (!(lo <= hi)) throw std::invalid_argument("golden_section_max: empty interval");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > x_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = (a + b) / 2.0;
  return {x, f(x)};
}

inline std::pair<double, double> golden_section_min(
    const std::function<double(double)>& f, double lo, double hi,
    double x_tol = 1e-10) {
  auto [x, neg] = golden_section_max([&](double t) { return -f(t); }, lo, hi, x_tol);
  return {x, -neg};
}

// Maximum of f(polar, azimuth) over the sphere: coarse grid then alternating
// golden-section refinement of each angle.
inline double sphere_max(const std::function<double(double, double)>& f,
                         int grid = 100) {
  const double pi = std::numbers::pi;
  double best = -std::numeric_limits<double>::infinity();
  double best_t = 0.0, best_p = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double t = pi * i / grid;
    for (int j = 0; j < 2 * grid; ++j) {
      const double p = 2.0 * pi * j / (2 * grid);
      const double v = f(t, p);
      if (v > best) {
        best = v;
        best_t = t;
        best_p = p;
      }
    }
  }
  double t = best_t, p = best_p;
  const double span_t = pi / grid, span_p = pi / grid;
  for (int round = 0; round < 4; ++round) {
    auto [t2, vt] = golden_section_max(
        [&](double x) { return f(x, p); }, std::max(0.0, t - span_t),
        std::min(pi, t + span_t), 1e-10);
    t = t2;
    auto [p2, vp] = golden_section_max(
        [&](double x) { return f(t, x); }, p - span_p, p + span_p, 1e-10);
    p = p2;
    best = std::max({best, vt, vp});
  }
  return best;
}

}  // namespace nonlocal
