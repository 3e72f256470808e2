#include "tridiag.hpp"

#include <stdexcept>

namespace hprandtl {

ShiftedLaplacianSolver::ShiftedLaplacianSolver(const Grid& g, double c) {
  if (c < 0.0) throw std::invalid_argument("shifted laplacian needs c >= 0");
  const int n = g.n;
  const double diag = 1.0 + 2.0 * c / (g.h * g.h);
  off_ = -c / (g.h * g.h);
  inv_pivot_.resize(n);
  upper_.resize(n);
  double pivot = diag;
  inv_pivot_[0] = 1.0 / pivot;
  upper_[0] = off_ * inv_pivot_[0];
  for (int j = 1; j < n; ++j) {
    pivot = diag - off_ * upper_[j - 1];
    inv_pivot_[j] = 1.0 / pivot;
    upper_[j] = off_ * inv_pivot_[j];
  }
}

void ShiftedLaplacianSolver::solve_in_place(std::span<cplx> rhs) const {
  const int n = static_cast<int>(inv_pivot_.size());
  if (static_cast<int>(rhs.size()) != n) throw GridMismatch("tridiagonal solve: size mismatch");
  rhs[0] *= inv_pivot_[0];
  for (int j = 1; j < n; ++j) rhs[j] = (rhs[j] - off_ * rhs[j - 1]) * inv_pivot_[j];
  for (int j = n - 2; j >= 0; --j) rhs[j] -= upper_[j] * rhs[j + 1];
}

}  // namespace hprandtl
