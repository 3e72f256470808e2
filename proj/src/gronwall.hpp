#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "report.hpp"

namespace hprandtl {

/// Scalar function tabulated on a uniform grid t_m = m dt.
struct Tabulated {
  std::vector<double> t;
  std::vector<double> v;
};

/// g (1 + (lambda t)^3 / 6) e^{lambda t}. Throws on negative input.
double gronwall_bound(double g_t, double lambda_t, double t);

/// g(t_i) + lambda(t_i)^3 / 2 * trapezoid of (t_i - s)^2 f(s) over [0, t_i].
/// `t` must be one of the tabulation times.
double hypothesis_rhs(const Tabulated& f, double g_t, double lambda_t, double t);

/// Same quantity at every tabulation time, in O(M) via the moment expansion
/// t^2 sum(w f) - 2 t sum(w s f) + sum(w s^2 f).
std::vector<double> hypothesis_rhs_all(const Tabulated& f, const std::vector<double>& g_t,
                                       const std::vector<double>& lambda_t);

/// Throws std::invalid_argument unless g and lambda are nonnegative and
/// nondecreasing and f is nonnegative.
void check_gronwall_instance(const std::vector<double>& g, const std::vector<double>& lambda,
                             const std::vector<double>& f);

/// Extremal trajectory f = g + lambda^3 w where w''' = g + lambda^3 w,
/// w(0) = w'(0) = w''(0) = 0, integrated with classical RK4. When
/// `hold_left` is set, g is frozen at its value at the start of each step,
/// which integrates step functions with jumps on the grid exactly in time.
Tabulated equality_oracle(const std::function<double(double)>& g, double lambda, double T, double dt,
                          bool hold_left = false);

struct GronwallReport {
  int trials = 0;
  std::uint64_t seed = 0;
  long samples = 0;
  int violations = 0;
  /// max over all samples of max(0, f - bound) / bound.
  double max_relative_violation = 0.0;
  /// One row per trial and variant (extremal, perturbed) at its tightest time.
  std::vector<CheckRow> rows;
};

/// Random step-monotone g and constant lambda per trial; checks the bound on
/// the extremal oracle and on a randomly damped trajectory that satisfies the
/// discrete hypothesis by construction.
GronwallReport verify_gronwall_randomized(int trials, std::uint64_t seed, double T = 2.0, double dt = 1e-3);

}  // namespace hprandtl
