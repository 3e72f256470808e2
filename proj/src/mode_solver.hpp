#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"
#include "shear.hpp"

namespace hprandtl {

enum class Model { hyperbolic, classical };

std::string to_string(Model m);
Model parse_model(const std::string& s);

/// Raised when dt exceeds the explicit-term stability limit.
class StabilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-frequency state. `w` is d/dt u_k and is ignored by the classical model.
struct ModeState {
  int k = 0;
  double t = 0.0;
  ComplexField u;
  ComplexField w;
  Model model = Model::hyperbolic;
};

/// Auxiliary stream variable psi_k and its time derivative.
struct PsiState {
  ComplexField psi;
  ComplexField psidot;
  double t = 0.0;
};

/// dt <= min(0.1, 0.5 / (1 + |k| (||U|| + ||U'||))).
double cfl_limit(int k, const ShearFlow& shear);
double cfl_limit(int k, double sup0, double sup1);

struct SolverConfig {
  double dt = 1e-4;
  double t_end = 1.0;
  int n = 255;
  int sample_stride = 1;
  bool store_full = false;
};

struct Sample {
  double t = 0.0;
  double norm_u = 0.0;
  double norm_dyu = 0.0;
  double norm_dtu = 0.0;
  /// ||(d/dt + 1) d/dy psi||, ||d2/dy2 psi||; NaN for the classical model.
  double norm_dt1_dypsi = 0.0;
  double norm_dyypsi = 0.0;
  double energy = 0.0;
  /// ||psi||, ||d/dy psi||, ||d/dt d/dy psi||; NaN for the classical model.
  double norm_psi = 0.0;
  double norm_dypsi = 0.0;
  double norm_dtdypsi = 0.0;
  /// Running sup over every step so far of norm_dt1_dypsi + norm_dyypsi.
  double sup_psi_pair = 0.0;
};

/// Every-step states of a hyperbolic run, kept when SolverConfig::store_full.
struct FullTrace {
  double dt = 0.0;
  std::vector<ComplexField> u, w, psi, psidot;
};

struct Trajectory {
  int k = 0;
  Model model = Model::hyperbolic;
  double dt = 0.0;
  std::vector<Sample> samples;
  /// max over every step of ||u_k(t)||.
  double max_norm_u = 0.0;
  bool blew_up = false;
  long blowup_step = -1;
  std::optional<FullTrace> full;
};

/// One IMEX step of the hyperbolic mode system in first-order form
///   u' = w,  w' = D u - (1 + ikU) w - ikU u + ikU' Phi + ikU' int_0^y w.
ModeState step_hyperbolic(const ModeState& s, const ShearFlow& shear, double dt, const Grid& g);

/// One step of u' = D u - ikU u + ikU' Phi. The -ikU u transport factor is
/// applied as an exact phase in two half steps around an IMEX step of the rest.
ModeState step_classical(const ModeState& s, const ShearFlow& shear, double dt, const Grid& g);

/// Hyperbolic step with psi_k co-integrated on the same stages:
///   ((d/dt + 1)(d/dt + ikU) - D) psi = Phi[u].
void step_hyperbolic_with_psi(ModeState& s, PsiState& p, const ShearFlow& shear, double dt,
                              const Grid& g);

/// 1/2 (||(d/dt + 1) u||^2 + ||d/dy u||^2).
double energy(const ModeState& s, const Grid& g);

Trajectory simulate_mode(const SolverConfig& cfg, const ShearFlow& shear, int k,
                         const ComplexField& u_in, const ComplexField& w_in, Model model,
                         const Grid& g);

}  // namespace hprandtl
