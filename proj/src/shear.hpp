#pragma once

#include <array>
#include <string>
#include <vector>

#include "grid.hpp"

namespace hprandtl {

enum class ShearKind { zero, constant, linear, poiseuille, cosine };

/// Base flow U_sh(y) with analytic derivatives up to third order.
struct ShearFlow {
  ShearKind kind = ShearKind::zero;
  std::string name;
  std::vector<double> params;

  /// Nodal samples of U, U', U'', U''' on the grid the flow was made for.
  std::array<std::vector<double>, 4> samples;
  /// Analytic sup norms over [0,1] of U, U', U'', U'''.
  std::array<double, 4> sup{};

  /// d-th derivative of U at an arbitrary y in [0,1].
  double eval(int derivative, double y) const;

  const std::vector<double>& u0() const { return samples[0]; }
  const std::vector<double>& u1() const { return samples[1]; }
  const std::vector<double>& u2() const { return samples[2]; }
  const std::vector<double>& u3() const { return samples[3]; }

  /// ||U'''|| + 2 ||U''||, the combination that drives the Gevrey radius loss.
  double curvature_weight() const { return sup[3] + 2.0 * sup[2]; }
  /// 1 + sum of the four sup norms.
  double w3inf_weight() const { return 1.0 + sup[0] + sup[1] + sup[2] + sup[3]; }
};

/// Catalog: zero, constant(c), linear(a,b) = a + b y, poiseuille(a) = a y (1-y),
/// cosine(a) = a cos(pi y). Throws std::invalid_argument on unknown names,
/// wrong arity or non-finite parameters.
ShearFlow make_shear(const std::string& name, const std::vector<double>& params, const Grid& g);

/// Sup norms only; needs no grid.
std::array<double, 4> shear_sup_norms(const std::string& name, const std::vector<double>& params);

/// Parses "poiseuille 4", "linear 0 1", "poiseuille(4)" or "linear(0, 1)".
std::pair<std::string, std::vector<double>> parse_shear_spec(const std::string& text);

std::string format_shear_spec(const std::string& name, const std::vector<double>& params);

}  // namespace hprandtl
