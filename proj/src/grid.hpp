#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace hprandtl {

using cplx = std::complex<double>;

/// Raised when a field is applied to a grid with a different node count.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Uniform interior discretization of (0,1): nodes y_j = j*h, j = 1..n,
/// h = 1/(n+1). Boundary values are eliminated (homogeneous Dirichlet).
struct Grid {
  int n = 0;
  double h = 0.0;
  std::vector<double> nodes;

  /// y at the staggered midpoint between node j and j+1, j = 0..n.
  double midpoint(int j) const { return (j + 0.5) * h; }
};

Grid build_grid(int n);

/// Profile of one Fourier mode on the interior nodes; zero at y = 0 and y = 1.
using ComplexField = std::vector<cplx>;

void check_on_grid(std::span<const cplx> f, const Grid& g);

ComplexField zeros(const Grid& g);

/// (f_{j-1} - 2 f_j + f_{j+1}) / h^2 with zero ghost values.
ComplexField apply_dirichlet_laplacian(std::span<const cplx> f, const Grid& g);

/// Composite trapezoid from 0 to y_j with f(0) = 0.
ComplexField cumulative_integral(std::span<const cplx> f, const Grid& g);

/// sqrt(h * sum |f_j|^2): trapezoid with zero boundary values.
double l2_norm(std::span<const cplx> f, const Grid& g);

/// Staggered derivative (f_{j+1} - f_j)/h at the n+1 midpoints, including
/// the two boundary cells.
std::vector<cplx> midpoint_derivative(std::span<const cplx> f, const Grid& g);

/// L2 norm of the staggered derivative (midpoint rule). This is the discrete
/// H^1_0 seminorm, equal to sqrt(-<f, D f>) for the Dirichlet laplacian D.
double derivative_norm(std::span<const cplx> f, const Grid& g);

/// Node-centred derivative (f_{j+1} - f_{j-1}) / (2h) with zero ghosts.
ComplexField centered_derivative(std::span<const cplx> f, const Grid& g);

}  // namespace hprandtl
