#pragma once

// Closed-form reference solutions used by the tests. Nothing here calls into
// the library's numerics.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// Amplitude of the k = 0 hyperbolic mode started from sin(pi y) at rest:
/// a'' + a' + lam a = 0, a(0) = 1, a'(0) = 0.
inline double damped_wave_amplitude(double t, double lam) {
  const double mu = std::sqrt(lam - 0.25);
  return std::exp(-0.5 * t) * (std::cos(mu * t) + std::sin(mu * t) / (2.0 * mu));
}

/// Continuous eigenvalue pi^2 of -d2/dy2 for sin(pi y).
inline double continuous_eigenvalue() { return pi * pi; }

/// Eigenvalue of the three-point Dirichlet laplacian for sin(pi y_j).
inline double discrete_eigenvalue(double h) {
  const double s = std::sin(0.5 * pi * h);
  return 4.0 * s * s / (h * h);
}

/// f(t) = (e^t + 2 e^{-t/2} cos(sqrt(3) t / 2)) / 3 solves w''' = 1 + w with zero
/// data, f = 1 + w.
inline double gronwall_extremal_unit(double t) {
  return (std::exp(t) + 2.0 * std::exp(-0.5 * t) * std::cos(std::sqrt(3.0) * t / 2.0)) / 3.0;
}

/// Root of e^{t/3} t = c for c > 0 by Newton from t = c.
inline double lifespan_root(double c) {
  double t = c;
  for (int i = 0; i < 100; ++i) {
    const double e = std::exp(t / 3.0);
    const double step = (e * t - c) / (e * (1.0 + t / 3.0));
    t -= step;
    if (std::abs(step) < 1e-16 * std::max(1.0, t)) break;
  }
  return t;
}

/// Observed order from errors at successively halved steps.
inline double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

inline std::vector<std::complex<double>> sample(int n, double (*f)(double)) {
  std::vector<std::complex<double>> out(n);
  const double h = 1.0 / (n + 1);
  for (int j = 0; j < n; ++j) out[j] = f((j + 1) * h);
  return out;
}

}  // namespace oracle
