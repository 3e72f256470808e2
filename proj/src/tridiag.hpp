#pragma once

#include <span>
#include <vector>

#include "grid.hpp"

namespace hprandtl {

/// LU factors of (I - c * D) for the Dirichlet laplacian D on a uniform grid.
/// The matrix is real, symmetric and diagonally dominant for c >= 0, so the
/// Thomas recursion needs no pivoting; right-hand sides are complex.
class ShiftedLaplacianSolver {
 public:
  ShiftedLaplacianSolver(const Grid& g, double c);

  void solve_in_place(std::span<cplx> rhs) const;

 private:
  double off_ = 0.0;
  std::vector<double> inv_pivot_;
  std::vector<double> upper_;
};

}  // namespace hprandtl
