#pragma once

#include <map>
#include <string>
#include <vector>

#include "auxiliary.hpp"
#include "config.hpp"
#include "gevrey.hpp"
#include "gronwall.hpp"
#include "mode_solver.hpp"
#include "report.hpp"

namespace hprandtl {

/// Least-squares line through (ln k, ln ln A_k) over k >= 1 with A_k > e.
struct GrowthFit {
  std::string status = "insufficient";  ///< "ok" or "insufficient"
  double p = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the linear fit.
  double residual = 0.0;
  int points = 0;
};

/// Amplification A_k = max_t ||u_k(t)|| / ||u_k(0)|| per frequency.
/// Blown-up modes carry +inf; modes with zero data are left out.
std::map<int, double> amplifications(const std::vector<Trajectory>& modes);

GrowthFit fit_growth(const std::map<int, double>& amplification);

struct Comparison {
  /// ok, degenerate, no_instability_resolved, classical_insufficient or
  /// hyperbolic_insufficient.
  std::string status;
  GrowthFit hyperbolic;
  GrowthFit classical;
  /// p_classical - p_hyperbolic; NaN unless both fits are ok.
  double ordering = 0.0;
  /// Least-squares c in ln A_k ~ c k^0.45 for the hyperbolic model, and
  /// whether every usable k lies under that envelope.
  double envelope_c = 0.0;
  bool envelope_holds = false;
};

/// Throws std::invalid_argument when the two amplification tables do not
/// cover the same frequencies.
Comparison compare_models(const std::map<int, double>& hyperbolic, const std::map<int, double>& classical);

struct RunResult {
  RunConfig cfg;
  double dt = 0.0;
  int stride = 1;
  double T_sigma = 0.0;
  /// Ascending k; empty when the model was not selected.
  std::vector<Trajectory> hyperbolic;
  std::vector<Trajectory> classical;
  std::vector<CheckRow> checks;
  std::map<int, double> growth_hyperbolic;
  std::map<int, double> growth_classical;
  GrowthFit fit_hyperbolic;
  GrowthFit fit_classical;
  std::optional<Comparison> comparison;
  std::optional<GronwallReport> gronwall;
  /// Informational notes, e.g. checks skipped for a partial frequency set.
  std::vector<std::string> notes;
  double wall_seconds = 0.0;
};

/// Simulates every configured mode on a worker pool and evaluates the
/// configured checks. Results do not depend on the worker count.
RunResult run_sweep(const RunConfig& cfg);

/// One frequency, both models as configured; no aggregate checks.
RunResult run_single_mode(const RunConfig& cfg, int k);

/// Only the randomized Gronwall verification.
RunResult run_gronwall(const RunConfig& cfg);

std::string trajectory_csv(const RunResult& r);
std::string checks_csv(const RunResult& r);
std::string growth_csv(const RunResult& r);

/// Summary of the run as JSON (fits, comparison, check tallies, notes).
std::string summary_json(const RunResult& r);

/// Writes the CSV files and manifest.json into `dir` (created if missing).
/// Throws std::runtime_error on I/O failure.
void write_outputs(const RunResult& r, const std::string& dir);

std::string sha256_hex(const std::string& data);

}  // namespace hprandtl
