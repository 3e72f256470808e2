#pragma once

#include <functional>
#include <span>
#include <vector>

#include "grid.hpp"
#include "tridiag.hpp"

namespace hprandtl {

/// One (q, dq/dt) pair of a damped wave system q'' + q' - D q = E.
struct WavePair {
  ComplexField q;
  ComplexField p;
};

/// Explicit right-hand side contribution to each p-equation. Receives the
/// stage time and all pairs; writes one field per pair into `out`.
using WaveExplicitTerm =
    std::function<void(double t, std::span<const WavePair> y, std::span<ComplexField> out)>;

/// Second-order IMEX step for systems of damped wave equations
///   q' = p,  p' = D q - p + E(t, y).
/// The stiff linear part (q' = p, p' = Dq - p) is advanced with the
/// trapezoidal rule; E with Heun's two-stage rule. Both stages share the
/// same tridiagonal factorisation of (I - c dt/2 D), c = (dt/2)/(1 + dt/2).
class DampedWaveImex {
 public:
  DampedWaveImex(const Grid& g, double dt);

  double dt() const { return dt_; }

  void step(double t, std::vector<WavePair>& y, const WaveExplicitTerm& explicit_term) const;

 private:
  void implicit_solve(WavePair& r) const;

  const Grid* grid_;
  double dt_;
  double c_;
  ShiftedLaplacianSolver solver_;
};

/// Explicit right-hand side for the heat equation u' = D u + E(t, u).
using HeatExplicitTerm = std::function<void(double t, std::span<const cplx> u, ComplexField& out)>;

/// Same stage structure as DampedWaveImex for u' = D u + E: trapezoidal
/// diffusion, Heun for E.
class HeatImex {
 public:
  HeatImex(const Grid& g, double dt);

  void step(double t, ComplexField& u, const HeatExplicitTerm& explicit_term) const;

 private:
  const Grid* grid_;
  double dt_;
  ShiftedLaplacianSolver solver_;
};

}  // namespace hprandtl
