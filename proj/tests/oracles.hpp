#pragma once

#include <cmath>
#include <functional>

// Reference values computed independently of the library.

namespace oracle {

/// J0 by its power series; accurate to round-off for |x| < 10.
inline double bessel_j0(double x) {
  double term = 1.0, sum = 1.0;
  const double q = -0.25 * x * x;
  for (int m = 1; m < 60; ++m) {
    term *= q / (double(m) * m);
    sum += term;
  }
  return sum;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// |q'(0)| at s = 0 from the first integral d q'^2 / 2 = int_0^{a/b} q (a - b q) dq,
/// with the integral done by Simpson's rule.
inline double zero_speed_slope(double a, double b, double d) {
  const int n = 2000;
  const double top = a / b, h = top / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double q = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * q * (a - b * q);
  }
  return std::sqrt(2.0 * (sum * h / 3.0) / d);
}

/// |q'(0)| of the semi-wave on the whole half-line, by RK4 along the unstable manifold of
/// (a/b, 0) in the phase plane, using q as the independent variable.
inline double phase_plane_slope(double a, double b, double d, double s) {
  const double lambda = (-s + std::sqrt(s * s + 4.0 * a * d)) / (2.0 * d);
  const double eps = 1e-7 * a / b;
  double q = a / b - eps;
  double w = -eps * lambda;
  auto rhs = [&](double qq, double ww) { return -(s * ww + qq * (a - b * qq)) / (d * ww); };
  const int n = 200000;
  const double h = -q / n;
  for (int i = 0; i < n; ++i) {
    const double k1 = rhs(q, w);
    const double k2 = rhs(q + 0.5 * h, w + 0.5 * h * k1);
    const double k3 = rhs(q + 0.5 * h, w + 0.5 * h * k2);
    const double k4 = rhs(q + h, w + h * k3);
    w += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    q += h;
  }
  return -w;
}

/// s* from the phase-plane slope.
inline double s_star(double a, double b, double d, double mu) {
  const double top = 2.0 * std::sqrt(a * d) * (1.0 - 1e-9);
  return bisect([&](double s) { return mu * phase_plane_slope(a, b, d, s) - s; }, 1e-9, top, 1e-9);
}

}  // namespace oracle
