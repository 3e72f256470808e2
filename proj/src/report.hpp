#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace hprandtl {

/// Relative slack allowed on every inequality check: lhs <= rhs (1 + 1e-8).
inline constexpr double kCheckSlack = 1e-8;

/// One evaluated inequality lhs <= rhs at time t.
struct CheckRow {
  std::string check;
  std::optional<int> k;  ///< empty for checks that aggregate over frequencies
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = true;
};

inline CheckRow make_check(std::string name, std::optional<int> k, double t, double lhs, double rhs) {
  CheckRow r{std::move(name), k, t, lhs, rhs, rhs - lhs, false};
  r.pass = std::isfinite(r.margin) && r.margin >= -kCheckSlack * std::abs(rhs);
  return r;
}

inline bool all_pass(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows) {
    if (!r.pass) return false;
  }
  return true;
}

/// Smallest margin relative to max(rhs, tiny); positive means comfortable.
/// Rows with both sides exactly zero are skipped.
inline double worst_relative_margin(const std::vector<CheckRow>& rows) {
  double worst = INFINITY;
  for (const auto& r : rows) {
    if (r.lhs == 0.0 && r.rhs == 0.0) continue;
    const double scale = std::max(std::abs(r.rhs), 1e-300);
    worst = std::min(worst, r.margin / scale);
  }
  return worst;
}

}  // namespace hprandtl
