#include "mode_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "imex.hpp"

namespace hprandtl {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr cplx kI{0.0, 1.0};

/// ikU and ikU' sampled on the grid.
struct Coefficients {
  ComplexField ikU;
  ComplexField ikU1;

  Coefficients(int k, const ShearFlow& shear, const Grid& g) : ikU(g.n), ikU1(g.n) {
    if (static_cast<int>(shear.u0().size()) != g.n) {
      throw GridMismatch("shear flow was sampled on a different grid");
    }
    for (int j = 0; j < g.n; ++j) {
      ikU[j] = kI * static_cast<double>(k) * shear.u0()[j];
      ikU1[j] = kI * static_cast<double>(k) * shear.u1()[j];
    }
  }
};

void hyperbolic_explicit(const Coefficients& c, const Grid& g, const WavePair& uw, ComplexField& out) {
  const ComplexField phi = cumulative_integral(uw.q, g);
  const ComplexField phidot = cumulative_integral(uw.p, g);
  for (int j = 0; j < g.n; ++j) {
    out[j] = -c.ikU[j] * (uw.p[j] + uw.q[j]) + c.ikU1[j] * (phi[j] + phidot[j]);
  }
}

void psi_explicit(const Coefficients& c, const Grid& g, const WavePair& psi, std::span<const cplx> u,
                  ComplexField& out) {
  const ComplexField phi = cumulative_integral(u, g);
  for (int j = 0; j < g.n; ++j) out[j] = -c.ikU[j] * (psi.p[j] + psi.q[j]) + phi[j];
}

void check_dt(int k, const ShearFlow& shear, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be positive");
  const double limit = cfl_limit(k, shear);
  if (dt > limit * (1.0 + 1e-12)) {
    throw StabilityError("dt=" + std::to_string(dt) + " exceeds the stability limit " +
                         std::to_string(limit) + " for k=" + std::to_string(k));
  }
}

/// Integrates one mode in place; owns the factorisations for a fixed dt.
class ModeIntegrator {
 public:
  ModeIntegrator(int k, const ShearFlow& shear, double dt, const Grid& g, Model model)
      : g_(&g), dt_(dt), model_(model), coef_(k, shear, g), wave_(g, dt), heat_(g, dt) {
    if (model == Model::classical) {
      half_phase_.resize(g.n);
      for (int j = 0; j < g.n; ++j) {
        half_phase_[j] = std::polar(1.0, -0.5 * dt * static_cast<double>(k) * shear.u0()[j]);
      }
    }
  }

  void step(ModeState& s) const {
    if (model_ == Model::hyperbolic) {
      std::vector<WavePair> y{{std::move(s.u), std::move(s.w)}};
      wave_.step(s.t, y, [this](double, std::span<const WavePair> st, std::span<ComplexField> out) {
        hyperbolic_explicit(coef_, *g_, st[0], out[0]);
      });
      s.u = std::move(y[0].q);
      s.w = std::move(y[0].p);
    } else {
      for (int j = 0; j < g_->n; ++j) s.u[j] *= half_phase_[j];
      heat_.step(s.t, s.u, [this](double, std::span<const cplx> u, ComplexField& out) {
        const ComplexField phi = cumulative_integral(u, *g_);
        for (int j = 0; j < g_->n; ++j) out[j] = coef_.ikU1[j] * phi[j];
      });
      for (int j = 0; j < g_->n; ++j) s.u[j] *= half_phase_[j];
    }
    s.t += dt_;
  }

  void step_with_psi(ModeState& s, PsiState& p) const {
    std::vector<WavePair> y{{std::move(s.u), std::move(s.w)}, {std::move(p.psi), std::move(p.psidot)}};
    wave_.step(s.t, y, [this](double, std::span<const WavePair> st, std::span<ComplexField> out) {
      hyperbolic_explicit(coef_, *g_, st[0], out[0]);
      psi_explicit(coef_, *g_, st[1], st[0].q, out[1]);
    });
    s.u = std::move(y[0].q);
    s.w = std::move(y[0].p);
    p.psi = std::move(y[1].q);
    p.psidot = std::move(y[1].p);
    s.t += dt_;
    p.t = s.t;
  }

  /// du/dt for the classical model.
  ComplexField classical_rate(const ComplexField& u) const {
    const ComplexField du = apply_dirichlet_laplacian(u, *g_);
    const ComplexField phi = cumulative_integral(u, *g_);
    ComplexField out(g_->n);
    for (int j = 0; j < g_->n; ++j) out[j] = du[j] - coef_.ikU[j] * u[j] + coef_.ikU1[j] * phi[j];
    return out;
  }

 private:
  const Grid* g_;
  double dt_;
  Model model_;
  Coefficients coef_;
  DampedWaveImex wave_;
  HeatImex heat_;
  ComplexField half_phase_;
};

double psi_pair_norm(const PsiState& p, const Grid& g) {
  ComplexField q(g.n);
  for (int j = 0; j < g.n; ++j) q[j] = p.psidot[j] + p.psi[j];
  return derivative_norm(q, g) + l2_norm(apply_dirichlet_laplacian(p.psi, g), g);
}

bool finite_state(const ModeState& s) {
  double acc = 0.0;
  for (const auto& v : s.u) acc += std::norm(v);
  for (const auto& v : s.w) acc += std::norm(v);
  return std::isfinite(acc);
}

}  // namespace

std::string to_string(Model m) { return m == Model::hyperbolic ? "hyperbolic" : "classical"; }

Model parse_model(const std::string& s) {
  if (s == "hyperbolic") return Model::hyperbolic;
  if (s == "classical") return Model::classical;
  throw std::invalid_argument("unknown model '" + s + "'");
}

double cfl_limit(int k, double sup0, double sup1) {
  return std::min(0.1, 0.5 / (1.0 + std::abs(static_cast<double>(k)) * (sup0 + sup1)));
}

double cfl_limit(int k, const ShearFlow& shear) { return cfl_limit(k, shear.sup[0], shear.sup[1]); }

ModeState step_hyperbolic(const ModeState& s, const ShearFlow& shear, double dt, const Grid& g) {
  if (s.model != Model::hyperbolic) throw std::invalid_argument("step_hyperbolic needs a hyperbolic state");
  check_on_grid(s.u, g);
  check_on_grid(s.w, g);
  check_dt(s.k, shear, dt);
  ModeState out = s;
  ModeIntegrator(s.k, shear, dt, g, Model::hyperbolic).step(out);
  return out;
}

ModeState step_classical(const ModeState& s, const ShearFlow& shear, double dt, const Grid& g) {
  if (s.model != Model::classical) throw std::invalid_argument("step_classical needs a classical state");
  check_on_grid(s.u, g);
  check_dt(s.k, shear, dt);
  ModeState out = s;
  ModeIntegrator(s.k, shear, dt, g, Model::classical).step(out);
  return out;
}

void step_hyperbolic_with_psi(ModeState& s, PsiState& p, const ShearFlow& shear, double dt,
                              const Grid& g) {
  check_on_grid(s.u, g);
  check_on_grid(s.w, g);
  check_on_grid(p.psi, g);
  check_on_grid(p.psidot, g);
  check_dt(s.k, shear, dt);
  ModeIntegrator(s.k, shear, dt, g, Model::hyperbolic).step_with_psi(s, p);
}

double energy(const ModeState& s, const Grid& g) {
  check_on_grid(s.u, g);
  check_on_grid(s.w, g);
  ComplexField damped(g.n);
  for (int j = 0; j < g.n; ++j) damped[j] = s.w[j] + s.u[j];
  const double a = l2_norm(damped, g);
  const double b = derivative_norm(s.u, g);
  return 0.5 * (a * a + b * b);
}

Trajectory simulate_mode(const SolverConfig& cfg, const ShearFlow& shear, int k,
                         const ComplexField& u_in, const ComplexField& w_in, Model model,
                         const Grid& g) {
  if (cfg.n != g.n) throw GridMismatch("solver config and grid disagree on n");
  check_on_grid(u_in, g);
  if (model == Model::hyperbolic) check_on_grid(w_in, g);
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) throw std::invalid_argument("t_end must be >= 0");
  if (cfg.sample_stride < 1) throw std::invalid_argument("sample_stride must be >= 1");
  check_dt(k, shear, cfg.dt);

  const long steps = cfg.t_end == 0.0 ? 0 : static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  const double dt = steps == 0 ? cfg.dt : cfg.t_end / static_cast<double>(steps);

  Trajectory traj;
  traj.k = k;
  traj.model = model;
  traj.dt = dt;

  ModeState s{k, 0.0, u_in, model == Model::hyperbolic ? w_in : zeros(g), model};
  PsiState p{zeros(g), zeros(g), 0.0};
  const bool hyper = model == Model::hyperbolic;
  ModeIntegrator integrator(k, shear, dt, g, model);

  if (cfg.store_full && hyper) {
    traj.full.emplace();
    traj.full->dt = dt;
  }
  auto keep_full = [&] {
    if (!traj.full) return;
    traj.full->u.push_back(s.u);
    traj.full->w.push_back(s.w);
    traj.full->psi.push_back(p.psi);
    traj.full->psidot.push_back(p.psidot);
  };

  double running_sup = 0.0;
  auto make_sample = [&](double t) {
    Sample smp;
    smp.t = t;
    smp.norm_u = l2_norm(s.u, g);
    smp.norm_dyu = derivative_norm(s.u, g);
    if (hyper) {
      smp.norm_dtu = l2_norm(s.w, g);
      smp.energy = energy(s, g);
      ComplexField q(g.n);
      for (int j = 0; j < g.n; ++j) q[j] = p.psidot[j] + p.psi[j];
      smp.norm_dt1_dypsi = derivative_norm(q, g);
      smp.norm_dyypsi = l2_norm(apply_dirichlet_laplacian(p.psi, g), g);
      smp.norm_psi = l2_norm(p.psi, g);
      smp.norm_dypsi = derivative_norm(p.psi, g);
      smp.norm_dtdypsi = derivative_norm(p.psidot, g);
      smp.sup_psi_pair = running_sup;
    } else {
      smp.norm_dtu = l2_norm(integrator.classical_rate(s.u), g);
      smp.energy = kNaN;
      smp.norm_dt1_dypsi = smp.norm_dyypsi = kNaN;
      smp.norm_psi = smp.norm_dypsi = smp.norm_dtdypsi = kNaN;
      smp.sup_psi_pair = kNaN;
    }
    return smp;
  };

  traj.max_norm_u = l2_norm(s.u, g);
  if (hyper) running_sup = psi_pair_norm(p, g);
  traj.samples.push_back(make_sample(0.0));
  keep_full();

  ModeState prev;
  PsiState prev_psi;
  for (long m = 1; m <= steps; ++m) {
    prev = s;
    if (hyper) {
      prev_psi = p;
      integrator.step_with_psi(s, p);
    } else {
      integrator.step(s);
    }
    const double t = static_cast<double>(m) * dt;
    s.t = t;
    p.t = t;
    if (!finite_state(s) || (hyper && !std::isfinite(psi_pair_norm(p, g)))) {
      traj.blew_up = true;
      traj.blowup_step = m;
      s = prev;
      if (hyper) p = prev_psi;
      if (traj.samples.back().t < s.t) traj.samples.push_back(make_sample(s.t));
      break;
    }
    traj.max_norm_u = std::max(traj.max_norm_u, l2_norm(s.u, g));
    if (hyper) running_sup = std::max(running_sup, psi_pair_norm(p, g));
    keep_full();
    if (m % cfg.sample_stride == 0 || m == steps) traj.samples.push_back(make_sample(t));
  }
  return traj;
}

}  // namespace hprandtl
