#include "grid.hpp"

#include <cmath>
#include <string>

namespace hprandtl {

Grid build_grid(int n) {
  if (n < 3) {
    throw std::invalid_argument("grid needs at least 3 interior nodes, got " + std::to_string(n));
  }
  Grid g;
  g.n = n;
  g.h = 1.0 / (n + 1);
  g.nodes.resize(n);
  for (int j = 0; j < n; ++j) g.nodes[j] = (j + 1) * g.h;
  return g;
}

void check_on_grid(std::span<const cplx> f, const Grid& g) {
  if (static_cast<int>(f.size()) != g.n) {
    throw GridMismatch("field has " + std::to_string(f.size()) + " values but grid has " +
                       std::to_string(g.n) + " nodes");
  }
}

ComplexField zeros(const Grid& g) { return ComplexField(g.n, cplx{}); }

ComplexField apply_dirichlet_laplacian(std::span<const cplx> f, const Grid& g) {
  check_on_grid(f, g);
  const int n = g.n;
  const double inv_h2 = 1.0 / (g.h * g.h);
  ComplexField out(n);
  for (int j = 0; j < n; ++j) {
    const cplx left = j > 0 ? f[j - 1] : cplx{};
    const cplx right = j + 1 < n ? f[j + 1] : cplx{};
    out[j] = (left - 2.0 * f[j] + right) * inv_h2;
  }
  return out;
}

ComplexField cumulative_integral(std::span<const cplx> f, const Grid& g) {
  check_on_grid(f, g);
  ComplexField out(g.n);
  const double half_h = 0.5 * g.h;
  cplx acc{};
  cplx prev{};
  for (int j = 0; j < g.n; ++j) {
    acc += half_h * (prev + f[j]);
    out[j] = acc;
    prev = f[j];
  }
  return out;
}

double l2_norm(std::span<const cplx> f, const Grid& g) {
  check_on_grid(f, g);
  double s = 0.0;
  for (const auto& v : f) s += std::norm(v);
  return std::sqrt(g.h * s);
}

std::vector<cplx> midpoint_derivative(std::span<const cplx> f, const Grid& g) {
  check_on_grid(f, g);
  const int n = g.n;
  std::vector<cplx> out(n + 1);
  for (int j = 0; j <= n; ++j) {
    const cplx left = j > 0 ? f[j - 1] : cplx{};
    const cplx right = j < n ? f[j] : cplx{};
    out[j] = (right - left) / g.h;
  }
  return out;
}

double derivative_norm(std::span<const cplx> f, const Grid& g) {
  check_on_grid(f, g);
  const int n = g.n;
  double s = 0.0;
  for (int j = 0; j <= n; ++j) {
    const cplx left = j > 0 ? f[j - 1] : cplx{};
    const cplx right = j < n ? f[j] : cplx{};
    s += std::norm(right - left);
  }
  return std::sqrt(s / g.h);
}

ComplexField centered_derivative(std::span<const cplx> f, const Grid& g) {
  check_on_grid(f, g);
  const int n = g.n;
  ComplexField out(n);
  const double inv_2h = 0.5 / g.h;
  for (int j = 0; j < n; ++j) {
    const cplx left = j > 0 ? f[j - 1] : cplx{};
    const cplx right = j + 1 < n ? f[j + 1] : cplx{};
    out[j] = (right - left) * inv_2h;
  }
  return out;
}

}  // namespace hprandtl
