#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gevrey.hpp"

namespace hprandtl {

/// Malformed or invalid run configuration. The message carries the line
/// number (or the offending override) when one is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ModelSelection { hyperbolic, classical, both };

struct CheckFlags {
  bool gronwall = false;
  bool psi_gronwall = false;
  bool omega_energy = false;
  bool psi_gevrey = false;
  bool theorem = false;
  bool psi_growth = false;

  bool any_per_mode() const { return psi_gronwall || omega_energy || psi_growth; }
};

struct RunConfig {
  ModelSelection model = ModelSelection::hyperbolic;
  std::string shear_name = "poiseuille";
  std::vector<double> shear_params{4.0};
  int grid_n = 255;
  /// Requested step; resolved from the stability limit when absent.
  std::optional<double> dt;
  double t_end = 1.0;
  int K = 8;
  /// Explicit frequency subset of -K..K; empty means all of -K..K.
  std::vector<int> k_list;
  double sigma = 8.0;
  DataShape shape = DataShape::sine;
  std::uint64_t seed = 0;
  CheckFlags checks;
  std::string output_dir = "out";
  /// 0 = hardware concurrency.
  int workers = 0;
  /// 0 = about 200 samples per run.
  int sample_stride = 0;
  std::vector<double> tau{0.25, 0.5};
  int gronwall_trials = 100;
  double gronwall_T = 2.0;
};

/// Parses flat `key = value` text with '#' comments, then applies
/// `overrides` ("key=value") in order. Validates the result.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

/// Applies one "key=value" assignment; `where` prefixes error messages.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& where);

/// Throws ConfigError when the configuration is inconsistent, including a
/// requested dt above the stability limit of the largest |k|.
void validate_config(const RunConfig& cfg);

/// Frequencies the run simulates, ascending.
std::vector<int> frequencies(const RunConfig& cfg);

/// Step used by every mode of the run. Auto: 1/N for the smallest N that is a
/// multiple of 100 with 1/N <= min(1e-3, stability limit at |k| = K).
double resolved_dt(const RunConfig& cfg);

/// Number of steps between stored samples.
int resolved_stride(const RunConfig& cfg);

int resolved_workers(const RunConfig& cfg);

/// Canonical key=value echo, one key per line, every key present.
std::string format_config(const RunConfig& cfg);

std::string to_string(ModelSelection m);

}  // namespace hprandtl
