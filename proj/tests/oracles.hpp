#pragma once

// Test-only quadrature oracles, independent of the library's cubature path.

#include <cmath>
#include <functional>

namespace oracles {

// Adaptive Simpson on [a, b]. Handles kinks and jumps by depth, not smarts.
inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double fa, double fm, double fb,
                               double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

inline double integrate_1d(const std::function<double(double)>& f, double a,
                           double b, double tol = 1e-14) {
  const double m = 0.5 * (a + b);
  return adaptive_simpson(f, a, b, f(a), f(m), f(b), tol, 52);
}

// Nested 1D quadrature for low-dimensional cross-checks (cost grows fast).
inline double integrate_2d(const std::function<double(double, double)>& f,
                           double tol = 1e-12) {
  return integrate_1d(
      [&](double x) {
        return integrate_1d([&](double y) { return f(x, y); }, 0.0, 1.0,
                            tol * 0.1);
      },
      0.0, 1.0, tol);
}

} // namespace oracles
