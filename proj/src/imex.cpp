#include "imex.hpp"

namespace hprandtl {

DampedWaveImex::DampedWaveImex(const Grid& g, double dt)
    : grid_(&g), dt_(dt), c_((0.5 * dt) / (1.0 + 0.5 * dt)), solver_(g, c_ * 0.5 * dt) {}

void DampedWaveImex::implicit_solve(WavePair& r) const {
  // Solves  q = r_q + dt/2 p,  p = r_p + dt/2 (D q - p)  for (q, p).
  const int n = grid_->n;
  const double half = 0.5 * dt_;
  for (int j = 0; j < n; ++j) r.q[j] += c_ * r.p[j];
  solver_.solve_in_place(r.q);
  const ComplexField dq = apply_dirichlet_laplacian(r.q, *grid_);
  const double scale = 1.0 / (1.0 + half);
  for (int j = 0; j < n; ++j) r.p[j] = (r.p[j] + half * dq[j]) * scale;
}

void DampedWaveImex::step(double t, std::vector<WavePair>& y,
                          const WaveExplicitTerm& explicit_term) const {
  const std::size_t m = y.size();
  const int n = grid_->n;
  const double half = 0.5 * dt_;

  std::vector<ComplexField> e0(m, ComplexField(n)), e1(m, ComplexField(n));
  explicit_term(t, y, e0);

  // Shared part of both stage right-hand sides: y0 + dt/2 * I(y0).
  std::vector<WavePair> base(m);
  for (std::size_t i = 0; i < m; ++i) {
    const ComplexField dq = apply_dirichlet_laplacian(y[i].q, *grid_);
    base[i].q.resize(n);
    base[i].p.resize(n);
    for (int j = 0; j < n; ++j) {
      base[i].q[j] = y[i].q[j] + half * y[i].p[j];
      base[i].p[j] = y[i].p[j] + half * (dq[j] - y[i].p[j]);
    }
  }

  std::vector<WavePair> stage = base;
  for (std::size_t i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) stage[i].p[j] += dt_ * e0[i][j];
    implicit_solve(stage[i]);
  }
  explicit_term(t + dt_, stage, e1);

  for (std::size_t i = 0; i < m; ++i) {
    WavePair r = std::move(base[i]);
    for (int j = 0; j < n; ++j) r.p[j] += half * (e0[i][j] + e1[i][j]);
    implicit_solve(r);
    y[i] = std::move(r);
  }
}

HeatImex::HeatImex(const Grid& g, double dt) : grid_(&g), dt_(dt), solver_(g, 0.5 * dt) {}

void HeatImex::step(double t, ComplexField& u, const HeatExplicitTerm& explicit_term) const {
  const int n = grid_->n;
  const double half = 0.5 * dt_;
  ComplexField e0(n), e1(n);
  explicit_term(t, u, e0);

  const ComplexField du = apply_dirichlet_laplacian(u, *grid_);
  ComplexField base(n);
  for (int j = 0; j < n; ++j) base[j] = u[j] + half * du[j];

  ComplexField stage(n);
  for (int j = 0; j < n; ++j) stage[j] = base[j] + dt_ * e0[j];
  solver_.solve_in_place(stage);
  explicit_term(t + dt_, stage, e1);

  for (int j = 0; j < n; ++j) u[j] = base[j] + half * (e0[j] + e1[j]);
  solver_.solve_in_place(u);
}

}  // namespace hprandtl
