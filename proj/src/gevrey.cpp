#include "gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "numfmt.hpp"

namespace hprandtl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double radius_loss(double curvature_weight, double t) {
  return std::pow(2.0, 5.0 / 6.0) * std::cbrt(curvature_weight) * std::exp(t / 3.0) * t;
}

double weight(double sigma, int k, int m = 3) {
  const double kk = std::abs(static_cast<double>(k));
  return std::exp(sigma * std::pow(kk, 1.0 / m));
}

double sample_cap(double sigma, const ShearFlow& shear, double t_cap) {
  const double life = lifespan_T_sigma(sigma, shear);
  return std::isfinite(life) ? std::min(t_cap, 0.9 * life) : t_cap;
}

}  // namespace

void validate_profile(const GevreyProfile& p) {
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw std::invalid_argument("sigma must be positive");
  if (p.m < 1) throw std::invalid_argument("Gevrey index m must be >= 1");
}

double gevrey_norm(const std::map<int, double>& mode_norms, double sigma, int m) {
  if (mode_norms.empty()) throw std::invalid_argument("gevrey_norm of an empty mode family");
  if (m < 1) throw std::invalid_argument("Gevrey index m must be >= 1");
  double out = 0.0;
  for (const auto& [k, v] : mode_norms) out = std::max(out, weight(sigma, k, m) * v);
  return out;
}

std::string to_string(DataShape s) { return s == DataShape::sine ? "sine" : "poly"; }

DataShape parse_data_shape(const std::string& s) {
  if (s == "sine") return DataShape::sine;
  if (s == "poly") return DataShape::poly;
  throw std::invalid_argument("unknown data shape '" + s + "' (expected sine or poly)");
}

ComplexField shape_profile(DataShape shape, const Grid& g) {
  ComplexField out(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double y = g.nodes[j];
    out[j] = shape == DataShape::sine ? std::sin(std::numbers::pi * y) : 4.0 * y * (1.0 - y);
  }
  return out;
}

double data_phase(std::uint64_t seed, int k, int channel) {
  if (k == 0) return 0.0;
  const auto ak = static_cast<std::uint64_t>(std::abs(static_cast<long>(k)));
  std::mt19937_64 rng(mix(mix(seed) ^ mix(ak * 2 + static_cast<std::uint64_t>(channel))));
  const double theta = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
  return k > 0 ? theta : -theta;
}

ModeData synth_mode(double sigma, int k, DataShape shape, std::uint64_t seed, const Grid& g) {
  const ComplexField phi = shape_profile(shape, g);
  const double amp = 1.0 / weight(sigma, k);
  const cplx a = std::polar(amp, data_phase(seed, k, 0));
  const cplx b = std::polar(amp, data_phase(seed, k, 1));
  ModeData d{k, ComplexField(g.n), ComplexField(g.n)};
  for (int j = 0; j < g.n; ++j) {
    d.u_in[j] = a * phi[j];
    d.ut_in[j] = b * phi[j];
  }
  return d;
}

std::vector<ModeData> synth_initial_data(const GevreyProfile& p, int K, DataShape shape, std::uint64_t seed,
                                         const Grid& g) {
  validate_profile(p);
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  std::vector<ModeData> out;
  out.reserve(2 * K + 1);
  for (int k = -K; k <= K; ++k) out.push_back(synth_mode(p.sigma, k, shape, seed, g));
  return out;
}

double lifespan_T_sigma(double sigma, double curvature_weight) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(curvature_weight >= 0.0)) throw std::invalid_argument("curvature weight must be >= 0");
  if (curvature_weight == 0.0) return kInf;
  const double target = sigma / 8.0;
  double lo = 0.0, hi = 1.0;
  while (radius_loss(curvature_weight, hi) < target) hi *= 2.0;
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (radius_loss(curvature_weight, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double lifespan_T_sigma(double sigma, const ShearFlow& shear) {
  return lifespan_T_sigma(sigma, shear.curvature_weight());
}

Radii radii(double sigma, double curvature_weight, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  if (t >= lifespan_T_sigma(sigma, curvature_weight)) {
    throw std::invalid_argument("t=" + format_double(t) + " is past the lifespan");
  }
  const double s = radius_loss(curvature_weight, t);
  const double beta = sigma / 4.0 - s;
  return {sigma / 2.0 - s, beta, beta - sigma / 8.0};
}

Radii radii(double sigma, const ShearFlow& shear, double t) {
  return radii(sigma, shear.curvature_weight(), t);
}

Constants constants(double sigma, const std::array<double, 4>& sup, double t) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  const double r12 = std::max(1.0, 12.0 / sigma);
  const double r4 = std::max(1.0, 4.0 / sigma);
  const double w = 1.0 + sup[0] + sup[1] + sup[2] + sup[3];
  Constants c;
  c.D_sigma = 1e4 * std::pow(r12, 15) * w * w * w;
  c.C_sigma = 170.0 * std::pow(r12, 6) * t * std::pow(1.0 + t, 3) * std::exp(t);
  c.C2_sigma = std::numbers::sqrt2 * r4 * r4 * r4 +
               4.0 * std::numbers::sqrt2 * std::pow(12.0 / sigma, 3) * t * c.C_sigma;
  c.Ctilde_sigma = 1e4 * std::pow(r12, 15) * std::pow(1.0 + t, 5) * std::exp(t);
  return c;
}

Constants constants(double sigma, const ShearFlow& shear, double t) { return constants(sigma, shear.sup, t); }

InitialModeNorms initial_mode_norms(const ModeData& d, const Grid& g) {
  return {derivative_norm(d.u_in, g), l2_norm(d.u_in, g), l2_norm(cumulative_integral(d.u_in, g), g),
          l2_norm(d.ut_in, g)};
}

void validate_spectral(const SpectralData& d) {
  if (d.K < 0 || d.modes.size() != static_cast<std::size_t>(2 * d.K + 1)) {
    throw std::invalid_argument("incomplete spectral data: expected modes -K..K");
  }
  const auto& ref = d.modes.front().samples;
  for (std::size_t i = 0; i < d.modes.size(); ++i) {
    const auto& m = d.modes[i];
    if (m.k != -d.K + static_cast<int>(i)) throw std::invalid_argument("incomplete spectral data: k out of order");
    if (m.model != Model::hyperbolic) throw std::invalid_argument("spectral data must be hyperbolic");
    if (m.blew_up) throw std::invalid_argument("incomplete spectral data: mode k=" + std::to_string(m.k) + " blew up");
    if (m.samples.size() != ref.size()) throw std::invalid_argument("incomplete spectral data: sample counts differ");
    for (std::size_t s = 0; s < ref.size(); ++s) {
      if (m.samples[s].t != ref[s].t) throw std::invalid_argument("incomplete spectral data: sample times differ");
    }
  }
}

std::vector<CheckRow> check_theorem(const SpectralData& data, double sigma, const ShearFlow& shear,
                                    const std::map<int, InitialModeNorms>& in, double t_cap) {
  validate_spectral(data);
  std::map<int, double> dyu_in, ut_in;
  for (const auto& m : data.modes) {
    const auto it = in.find(m.k);
    if (it == in.end()) throw std::invalid_argument("missing initial norms for k=" + std::to_string(m.k));
    dyu_in[m.k] = it->second.dyu_in;
    ut_in[m.k] = it->second.ut_in;
  }
  const double init = gevrey_norm(dyu_in, sigma) + gevrey_norm(ut_in, sigma);
  const double cap = sample_cap(sigma, shear, t_cap);
  const double d_sigma = constants(sigma, shear, 0.0).D_sigma;

  std::vector<CheckRow> rows;
  const auto& times = data.modes.front().samples;
  for (std::size_t s = 0; s < times.size(); ++s) {
    const double t = times[s].t;
    if (t > cap) break;
    const Radii r = radii(sigma, shear, t);
    std::map<int, double> dyu, dtu;
    for (const auto& m : data.modes) {
      dyu[m.k] = m.samples[s].norm_dyu;
      dtu[m.k] = m.samples[s].norm_dtu;
    }
    const double lhs = gevrey_norm(dyu, r.beta) + gevrey_norm(dtu, r.gamma);
    const double rhs = d_sigma * std::pow(1.0 + t, 5) * std::exp(t) * init;
    rows.push_back(make_check("theorem", std::nullopt, t, lhs, rhs));
  }
  return rows;
}

std::vector<CheckRow> check_psi_gevrey(const SpectralData& data, double sigma, const ShearFlow& shear,
                                    const std::map<int, InitialModeNorms>& in, double t_cap) {
  validate_spectral(data);
  std::map<int, double> init_sum;
  for (const auto& m : data.modes) {
    const auto it = in.find(m.k);
    if (it == in.end()) throw std::invalid_argument("missing initial norms for k=" + std::to_string(m.k));
    init_sum[m.k] = it->second.phi_in + it->second.u_in + it->second.ut_in;
  }
  const double init = gevrey_norm(init_sum, sigma);
  const double w = shear.w3inf_weight();
  const double cap = sample_cap(sigma, shear, t_cap);

  std::vector<CheckRow> rows;
  const auto& times = data.modes.front().samples;
  for (std::size_t s = 0; s < times.size(); ++s) {
    const double t = times[s].t;
    if (t > cap) break;
    const double a = radii(sigma, shear, t).alpha;
    std::map<int, double> n0, n1, n2, n3;
    for (const auto& m : data.modes) {
      n0[m.k] = m.samples[s].norm_psi;
      n1[m.k] = m.samples[s].norm_dypsi;
      n2[m.k] = m.samples[s].norm_dtdypsi;
      n3[m.k] = m.samples[s].norm_dyypsi;
    }
    const double lhs = gevrey_norm(n0, a) + gevrey_norm(n1, a) + gevrey_norm(n2, a) + gevrey_norm(n3, a);
    const double rhs = constants(sigma, shear, t).C_sigma * w * w * init;
    rows.push_back(make_check("psi_gevrey", std::nullopt, t, lhs, rhs));
  }
  return rows;
}

}  // namespace hprandtl
