#pragma once

#include <functional>
#include <vector>

#include "grid.hpp"
#include "mode_solver.hpp"
#include "report.hpp"
#include "shear.hpp"

namespace hprandtl {

/// L2 norms of the initial data of one mode: Phi_in = int_0^y u_in, u_in, u_t,in.
struct InitialNorms {
  double phi_in = 0.0;
  double u_in = 0.0;
  double ut_in = 0.0;
};

InitialNorms initial_norms(const ComplexField& u_in, const ComplexField& ut_in, const Grid& g);

/// One IMEX step of ((d/dt + 1)(d/dt + ikU) - D) psi = forcing(t), same
/// stage structure as the hyperbolic mode step.
PsiState step_psi(const PsiState& p, const std::function<ComplexField(double)>& forcing,
                  const ShearFlow& shear, int k, double dt, const Grid& g);

/// f_k evaluated two ways on the interior midpoints y_{j+1/2}, j = 1..n-1.
struct FkComparison {
  /// ((d/dt + 1)(d/dt + ikU) - d2/dy2) d/dy psi from space and time stencils.
  std::vector<cplx> direct;
  /// u - ikU' (d/dt + 1) psi, obtained by differentiating the psi equation in y.
  std::vector<cplx> identity;
  /// u + ikU' (d/dt + 1) psi, the sign as printed in the source derivation.
  std::vector<cplx> identity_flipped;
  double discrepancy = 0.0;
  double discrepancy_flipped = 0.0;
  double norm_direct = 0.0;
};

/// Needs trace steps m-1, m, m+1 (1 <= m < steps).
FkComparison compute_f_k(const FullTrace& trace, std::size_t m, const ShearFlow& shear, int k,
                         const Grid& g);

/// L2 norm of ((d/dt + 1)(d/dt + ikU) - D) psi - Phi[u] at step m, with
/// centred time differences of the stored psi trace.
double psi_residual(const FullTrace& trace, std::size_t m, const ShearFlow& shear, int k, const Grid& g);

/// [U', d2/dy2] g = -U''' g - 2 U'' dy_g on the nodes.
ComplexField apply_commutator(const ShearFlow& shear, const ComplexField& g_field,
                              const ComplexField& dy_g, const Grid& g);

/// Node values of (d/dt + 1) d/dy psi at every stored step.
std::vector<ComplexField> psi_forcing_trace(const FullTrace& trace, const Grid& g);

/// Backward test function sampled on the forward time grid t_m = m dt,
/// m = 0..M with M dt = tau.
struct OmegaTrajectory {
  double dt = 0.0;
  double tau = 0.0;
  std::vector<ComplexField> omega;
  std::vector<ComplexField> omegadot;
};

/// Solves ((d/dt - 1)(d/dt + ikU) - D) omega = rhs on (0, tau) with zero data
/// at t = tau by reversing time. `rhs[m]` is the forcing at t = m dt; tau must
/// be a step-grid time within the trace.
OmegaTrajectory solve_omega_backward(const std::vector<ComplexField>& rhs, double dt,
                                     const ShearFlow& shear, int k, double tau, const Grid& g);

/// The three backward energy bounds on omega, at every `stride`-th step t <= tau.
std::vector<CheckRow> check_omega_energy(const OmegaTrajectory& omega, const std::vector<ComplexField>& rhs,
                                    int k, const Grid& g, int stride = 1);

/// g_k(t) and lambda_k(t) of the weighted Gronwall inequality for psi.
double g_k(double t, int k, const ShearFlow& shear, const InitialNorms& in);
double g_k(double t, int k, const std::array<double, 4>& sup, const InitialNorms& in);
double lambda_k(double t, int k, const ShearFlow& shear);
double lambda_k(double t, int k, double curvature_weight);

/// Closed-form right-hand side of the Gevrey-3 growth estimate for psi.
double psi_growth_bound(double t, int k, const ShearFlow& shear, const InitialNorms& in);

/// Weighted-Gronwall hypothesis for psi at every sample t <= t_max.
std::vector<CheckRow> check_psi_gronwall(const Trajectory& traj, const ShearFlow& shear, int k,
                                   const InitialNorms& in, double t_max);

/// Closed-form Gevrey-3 bound for psi at every sample t <= t_max.
std::vector<CheckRow> check_psi_growth_bound(const Trajectory& traj, const ShearFlow& shear, int k,
                                             const InitialNorms& in, double t_max);

}  // namespace hprandtl
