#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grid.hpp"
#include "mode_solver.hpp"
#include "report.hpp"
#include "shear.hpp"

namespace hprandtl {

struct GevreyProfile {
  double sigma = 1.0;
  int m = 3;
};

void validate_profile(const GevreyProfile& p);

/// max_k e^{sigma |k|^{1/m}} norm_k over the tabulated frequencies.
double gevrey_norm(const std::map<int, double>& mode_norms, double sigma, int m = 3);

enum class DataShape { sine, poly };

std::string to_string(DataShape s);
DataShape parse_data_shape(const std::string& s);

/// Initial position and velocity of one mode.
struct ModeData {
  int k = 0;
  ComplexField u_in;
  ComplexField ut_in;
};

/// Profile phi on the grid: sin(pi y) or 4 y (1 - y).
ComplexField shape_profile(DataShape shape, const Grid& g);

/// Phase of mode k for one data channel (0 = position, 1 = velocity).
/// Depends only on (seed, |k|, channel); odd in k and zero for k = 0.
double data_phase(std::uint64_t seed, int k, int channel);

/// One mode of the synthesized data: e^{-sigma |k|^{1/3}} e^{i theta_k} phi(y)
/// for both u_in and u_t,in, with independent phases.
ModeData synth_mode(double sigma, int k, DataShape shape, std::uint64_t seed, const Grid& g);

/// synth_mode for k = -K..K in increasing k.
std::vector<ModeData> synth_initial_data(const GevreyProfile& p, int K, DataShape shape, std::uint64_t seed,
                                         const Grid& g);

/// Positive root of sigma/8 = 2^{5/6} W^{1/3} e^{t/3} t with W = ||U'''|| + 2||U''||;
/// +infinity when W = 0.
double lifespan_T_sigma(double sigma, double curvature_weight);
double lifespan_T_sigma(double sigma, const ShearFlow& shear);

struct Radii {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// alpha = sigma/2 - s(t), beta = sigma/4 - s(t), gamma = beta - sigma/8 with
/// s(t) = 2^{5/6} W^{1/3} e^{t/3} t. Throws for t >= T_sigma.
Radii radii(double sigma, double curvature_weight, double t);
Radii radii(double sigma, const ShearFlow& shear, double t);

struct Constants {
  double D_sigma = 0.0;
  double C_sigma = 0.0;
  double C2_sigma = 0.0;
  double Ctilde_sigma = 0.0;
};

/// `sup` holds ||U^(i)||_inf, i = 0..3.
Constants constants(double sigma, const std::array<double, 4>& sup, double t);
Constants constants(double sigma, const ShearFlow& shear, double t);

/// Per-frequency initial norms entering the right-hand sides.
struct InitialModeNorms {
  double dyu_in = 0.0;
  double u_in = 0.0;
  double phi_in = 0.0;
  double ut_in = 0.0;
};

InitialModeNorms initial_mode_norms(const ModeData& d, const Grid& g);

/// Hyperbolic trajectories of all k = -K..K on a common sample grid.
struct SpectralData {
  int K = 0;
  std::vector<Trajectory> modes;
};

/// Throws std::invalid_argument ("incomplete spectral data") unless the
/// modes are exactly -K..K in order, none blew up, and the sample times agree.
void validate_spectral(const SpectralData& d);

/// Main Gevrey estimate on u at every sample t <= t_cap, with t_cap capped
/// by 0.9 T_sigma.
std::vector<CheckRow> check_theorem(const SpectralData& data, double sigma, const ShearFlow& shear,
                                    const std::map<int, InitialModeNorms>& in, double t_cap);

/// Gevrey-3 estimate on psi at radius alpha(t), same sampling rule.
std::vector<CheckRow> check_psi_gevrey(const SpectralData& data, double sigma, const ShearFlow& shear,
                                    const std::map<int, InitialModeNorms>& in, double t_cap);

}  // namespace hprandtl
