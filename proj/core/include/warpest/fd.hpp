#ifndef WARPEST_FD_HPP
#define WARPEST_FD_HPP

#include <vector>

#include "warpest/grid.hpp"

namespace warpest {
namespace fd {

// Fourth-order finite differences on a uniform grid. Interior nodes use the
// five-point (first derivative) and five-point (second derivative) central
// stencils; the two nodes at each end fall back to one-sided stencils of the
// same order. All stencils are exact on polynomials up to degree four.

std::vector<double> derivative(const std::vector<double>& u, double h);
std::vector<double> second_derivative(const std::vector<double>& u, double h);

ScalarProfile derivative(const ScalarProfile& u);
ScalarProfile second_derivative(const ScalarProfile& u);

/// Stencil weights for d/dr at node i of an n-node grid, as (offset, weight/h)
/// pairs. Used by the collocation Jacobian.
struct StencilEntry {
  int offset;
  double weight;
};
std::vector<StencilEntry> derivative_stencil(int i, int n, double h);
std::vector<StencilEntry> second_derivative_stencil(int i, int n, double h);

/// Value of the profile at an off-node radius via six-point Lagrange
/// interpolation (error O(h^6) on smooth data). r is clamped to the grid.
double interpolate(const ScalarProfile& p, double r);

}  // namespace fd
}  // namespace warpest

#endif  // WARPEST_FD_HPP
