#include "auxiliary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "imex.hpp"
#include "numfmt.hpp"

namespace hprandtl {
namespace {

constexpr cplx kI{0.0, 1.0};

/// Average of node field f at midpoint i (between nodes i and i+1, 1-based).
cplx at_midpoint(std::span<const cplx> f, int i) {
  const int n = static_cast<int>(f.size());
  const cplx left = i >= 1 ? f[i - 1] : cplx{};
  const cplx right = i < n ? f[i] : cplx{};
  return 0.5 * (left + right);
}

double midpoint_l2(std::span<const cplx> f, double h) {
  double s = 0.0;
  for (const auto& v : f) s += std::norm(v);
  return std::sqrt(h * s);
}

/// Exact weights of int_{t_j}^{t_{j+1}} (t - s)^2 ds.
double kernel_cell(double t, double a, double b) {
  const double ta = t - a;
  const double tb = t - b;
  return (ta * ta * ta - tb * tb * tb) / 3.0;
}

}  // namespace

InitialNorms initial_norms(const ComplexField& u_in, const ComplexField& ut_in, const Grid& g) {
  return {l2_norm(cumulative_integral(u_in, g), g), l2_norm(u_in, g), l2_norm(ut_in, g)};
}

PsiState step_psi(const PsiState& p, const std::function<ComplexField(double)>& forcing,
                  const ShearFlow& shear, int k, double dt, const Grid& g) {
  check_on_grid(p.psi, g);
  check_on_grid(p.psidot, g);
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (dt > cfl_limit(k, shear) * (1.0 + 1e-12)) throw StabilityError("dt exceeds the stability limit");
  ComplexField ikU(g.n);
  for (int j = 0; j < g.n; ++j) ikU[j] = kI * static_cast<double>(k) * shear.u0()[j];

  DampedWaveImex stepper(g, dt);
  std::vector<WavePair> y{{p.psi, p.psidot}};
  stepper.step(p.t, y, [&](double t, std::span<const WavePair> st, std::span<ComplexField> out) {
    const ComplexField f = forcing(t);
    check_on_grid(f, g);
    for (int j = 0; j < g.n; ++j) out[0][j] = -ikU[j] * (st[0].p[j] + st[0].q[j]) + f[j];
  });
  return {std::move(y[0].q), std::move(y[0].p), p.t + dt};
}

FkComparison compute_f_k(const FullTrace& trace, std::size_t m, const ShearFlow& shear, int k,
                         const Grid& g) {
  if (m < 1 || m + 1 >= trace.psi.size()) {
    throw std::out_of_range("compute_f_k needs stored steps m-1 and m+1");
  }
  const int n = g.n;
  const double h = g.h;
  const double dt = trace.dt;
  const double kk = static_cast<double>(k);

  const auto& psi = trace.psi[m];
  const auto& pdot = trace.psidot[m];
  ComplexField pddot(n);
  for (int j = 0; j < n; ++j) pddot[j] = (trace.psidot[m + 1][j] - trace.psidot[m - 1][j]) / (2.0 * dt);

  const auto d = midpoint_derivative(psi, g);
  const auto dt_d = midpoint_derivative(pdot, g);
  const auto dtt_d = midpoint_derivative(pddot, g);

  FkComparison out;
  out.direct.reserve(n - 1);
  out.identity.reserve(n - 1);
  out.identity_flipped.reserve(n - 1);
  for (int i = 1; i <= n - 1; ++i) {
    const double y = g.midpoint(i);
    const cplx ikU = kI * kk * shear.eval(0, y);
    const cplx ikU1 = kI * kk * shear.eval(1, y);
    const cplx d3 = (d[i + 1] - 2.0 * d[i] + d[i - 1]) / (h * h);
    out.direct.push_back(dtt_d[i] + (1.0 + ikU) * dt_d[i] + ikU * d[i] - d3);

    const cplx u_mid = at_midpoint(trace.u[m], i);
    const cplx damped = at_midpoint(pdot, i) + at_midpoint(psi, i);
    out.identity.push_back(u_mid - ikU1 * damped);
    out.identity_flipped.push_back(u_mid + ikU1 * damped);
  }
  std::vector<cplx> diff(out.direct.size()), diff_flipped(out.direct.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = out.direct[i] - out.identity[i];
    diff_flipped[i] = out.direct[i] - out.identity_flipped[i];
  }
  out.discrepancy = midpoint_l2(diff, h);
  out.discrepancy_flipped = midpoint_l2(diff_flipped, h);
  out.norm_direct = midpoint_l2(out.direct, h);
  return out;
}

double psi_residual(const FullTrace& trace, std::size_t m, const ShearFlow& shear, int k, const Grid& g) {
  if (m < 1 || m + 1 >= trace.psi.size()) throw std::out_of_range("psi_residual needs steps m-1 and m+1");
  const int n = g.n;
  const double dt = trace.dt;
  const auto& prev = trace.psi[m - 1];
  const auto& cur = trace.psi[m];
  const auto& next = trace.psi[m + 1];
  const ComplexField lap = apply_dirichlet_laplacian(cur, g);
  const ComplexField phi = cumulative_integral(trace.u[m], g);
  ComplexField r(n);
  for (int j = 0; j < n; ++j) {
    const cplx ikU = kI * static_cast<double>(k) * shear.u0()[j];
    const cplx pt = (next[j] - prev[j]) / (2.0 * dt);
    const cplx ptt = (next[j] - 2.0 * cur[j] + prev[j]) / (dt * dt);
    r[j] = ptt + (1.0 + ikU) * pt + ikU * cur[j] - lap[j] - phi[j];
  }
  return l2_norm(r, g);
}

ComplexField apply_commutator(const ShearFlow& shear, const ComplexField& g_field, const ComplexField& dy_g,
                              const Grid& g) {
  check_on_grid(g_field, g);
  check_on_grid(dy_g, g);
  ComplexField out(g.n);
  for (int j = 0; j < g.n; ++j) out[j] = -shear.u3()[j] * g_field[j] - 2.0 * shear.u2()[j] * dy_g[j];
  return out;
}

std::vector<ComplexField> psi_forcing_trace(const FullTrace& trace, const Grid& g) {
  std::vector<ComplexField> out;
  out.reserve(trace.psi.size());
  ComplexField q(g.n);
  for (std::size_t m = 0; m < trace.psi.size(); ++m) {
    for (int j = 0; j < g.n; ++j) q[j] = trace.psidot[m][j] + trace.psi[m][j];
    out.push_back(centered_derivative(q, g));
  }
  return out;
}

OmegaTrajectory solve_omega_backward(const std::vector<ComplexField>& rhs, double dt, const ShearFlow& shear,
                                     int k, double tau, const Grid& g) {
  if (!(dt > 0.0) || !(tau >= 0.0)) throw std::invalid_argument("omega solve needs dt > 0 and tau >= 0");
  const long steps = std::lround(tau / dt);
  if (std::abs(static_cast<double>(steps) * dt - tau) > 1e-9 * std::max(1.0, tau)) {
    throw std::invalid_argument("tau=" + format_double(tau) + " is not on the time-step grid");
  }
  if (rhs.empty() || static_cast<std::size_t>(steps) >= rhs.size()) {
    throw std::invalid_argument("forcing trace does not reach tau=" + format_double(tau));
  }
  for (long m = 0; m <= steps; ++m) check_on_grid(rhs[m], g);

  ComplexField ikU(g.n);
  for (int j = 0; j < g.n; ++j) ikU[j] = kI * static_cast<double>(k) * shear.u0()[j];

  // s = tau - t turns the terminal-value problem into
  //   ((d/ds + 1)(d/ds - ikU) - D) Omega = rhs(tau - s),  Omega(0) = dOmega/ds(0) = 0.
  DampedWaveImex stepper(g, dt);
  std::vector<WavePair> y{{zeros(g), zeros(g)}};
  std::vector<ComplexField> big_omega{y[0].q}, big_p{y[0].p};
  for (long m = 0; m < steps; ++m) {
    stepper.step(static_cast<double>(m) * dt, y,
                 [&](double s, std::span<const WavePair> st, std::span<ComplexField> out) {
                   const long idx = steps - std::lround(s / dt);
                   const auto& f = rhs[static_cast<std::size_t>(idx)];
                   for (int j = 0; j < g.n; ++j) out[0][j] = ikU[j] * (st[0].p[j] + st[0].q[j]) + f[j];
                 });
    big_omega.push_back(y[0].q);
    big_p.push_back(y[0].p);
  }

  OmegaTrajectory out;
  out.dt = dt;
  out.tau = tau;
  out.omega.resize(steps + 1);
  out.omegadot.resize(steps + 1);
  for (long i = 0; i <= steps; ++i) {
    out.omega[i] = big_omega[steps - i];
    out.omegadot[i] = big_p[steps - i];
    for (auto& v : out.omegadot[i]) v = -v;
  }
  return out;
}

std::vector<CheckRow> check_omega_energy(const OmegaTrajectory& omega, const std::vector<ComplexField>& rhs, int k,
                                    const Grid& g, int stride) {
  const std::size_t steps = omega.omega.size() - 1;
  if (rhs.size() < steps + 1) throw std::invalid_argument("forcing trace shorter than the omega trajectory");
  if (stride < 1) stride = 1;
  const double dt = omega.dt;
  const double tau = omega.tau;

  std::vector<double> fnorm(steps + 1);
  for (std::size_t m = 0; m <= steps; ++m) fnorm[m] = l2_norm(rhs[m], g);

  // Suffix trapezoid sums of |F| and s |F| over [t_i, tau].
  std::vector<double> int_f(steps + 1, 0.0), int_sf(steps + 1, 0.0);
  for (std::size_t i = steps; i-- > 0;) {
    const double s0 = static_cast<double>(i) * dt;
    const double s1 = static_cast<double>(i + 1) * dt;
    int_f[i] = int_f[i + 1] + 0.5 * dt * (fnorm[i] + fnorm[i + 1]);
    int_sf[i] = int_sf[i + 1] + 0.5 * dt * (s0 * fnorm[i] + s1 * fnorm[i + 1]);
  }

  std::vector<double> sup_a(steps + 1), sup_b(steps + 1), sup_c(steps + 1);
  double a = 0.0, b = 0.0, c = 0.0;
  ComplexField tmp(g.n);
  for (std::size_t i = steps + 1; i-- > 0;) {
    for (int j = 0; j < g.n; ++j) tmp[j] = omega.omegadot[i][j] - omega.omega[i][j];
    a = std::max(a, l2_norm(tmp, g));
    b = std::max(b, derivative_norm(omega.omega[i], g));
    c = std::max(c, l2_norm(omega.omega[i], g));
    sup_a[i] = a;
    sup_b[i] = b;
    sup_c[i] = c;
  }

  const std::string suffix = "[tau=" + format_double(tau) + "]";
  std::vector<CheckRow> rows;
  for (std::size_t i = 0; i <= steps; ++i) {
    if (i % static_cast<std::size_t>(stride) != 0 && i != steps) continue;
    const double t = static_cast<double>(i) * dt;
    const double i3 = int_sf[i] - t * int_f[i];
    rows.push_back(make_check("omega_energy.dt_minus_one" + suffix, k, t, sup_a[i], 2.0 * int_f[i]));
    rows.push_back(make_check("omega_energy.dy" + suffix, k, t, sup_b[i], std::numbers::sqrt2 * int_f[i]));
    rows.push_back(make_check("omega_energy.l2" + suffix, k, t, sup_c[i], 2.0 * std::exp(tau - t) * std::max(i3, 0.0)));
  }
  return rows;
}

double g_k(double t, int k, const std::array<double, 4>& sup, const InitialNorms& in) {
  const double kk = std::abs(static_cast<double>(k));
  return 4.0 * t *
         (kk * (sup[1] * in.phi_in + sup[0] * in.u_in) + in.ut_in + (3.0 + std::numbers::sqrt2) * in.u_in);
}

double g_k(double t, int k, const ShearFlow& shear, const InitialNorms& in) { return g_k(t, k, shear.sup, in); }

double lambda_k(double t, int k, double curvature_weight) {
  const double kk = std::abs(static_cast<double>(k));
  return std::pow(2.0, 5.0 / 6.0) * std::cbrt(kk) * std::cbrt(curvature_weight) * std::exp(t / 3.0);
}

double lambda_k(double t, int k, const ShearFlow& shear) { return lambda_k(t, k, shear.curvature_weight()); }

double psi_growth_bound(double t, int k, const ShearFlow& shear, const InitialNorms& in) {
  const double kk = std::abs(static_cast<double>(k));
  const double w = shear.curvature_weight();
  const double poly = 1.0 + 2.0 * std::numbers::sqrt2 * kk * w * std::exp(t) * t * t * t / 3.0;
  const double expo = std::exp(std::cbrt(kk) * std::pow(2.0, 5.0 / 6.0) * std::cbrt(w) * std::exp(t / 3.0) * t);
  return g_k(t, k, shear, in) * poly * expo;
}

std::vector<CheckRow> check_psi_gronwall(const Trajectory& traj, const ShearFlow& shear, int k, const InitialNorms& in,
                                   double t_max) {
  if (traj.model != Model::hyperbolic) throw std::invalid_argument("psi_gronwall check needs a hyperbolic trajectory");
  std::vector<CheckRow> rows;
  const auto& s = traj.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = s[i].t;
    if (t > t_max * (1.0 + 1e-12)) break;
    // Running sup held constant from the left on each sample cell.
    double integral = 0.0;
    for (std::size_t j = 0; j < i; ++j) integral += s[j].sup_psi_pair * kernel_cell(t, s[j].t, s[j + 1].t);
    const double lam = lambda_k(t, k, shear);
    const double rhs = g_k(t, k, shear, in) + 0.5 * lam * lam * lam * integral;
    rows.push_back(make_check("psi_gronwall", k, t, s[i].sup_psi_pair, rhs));
  }
  return rows;
}

std::vector<CheckRow> check_psi_growth_bound(const Trajectory& traj, const ShearFlow& shear, int k,
                                             const InitialNorms& in, double t_max) {
  if (traj.model != Model::hyperbolic) throw std::invalid_argument("psi growth check needs a hyperbolic trajectory");
  std::vector<CheckRow> rows;
  for (const auto& smp : traj.samples) {
    if (smp.t > t_max * (1.0 + 1e-12)) break;
    rows.push_back(make_check("psi_growth", k, smp.t, smp.sup_psi_pair, psi_growth_bound(smp.t, k, shear, in)));
  }
  return rows;
}

}  // namespace hprandtl
