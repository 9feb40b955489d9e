#ifndef WARPEST_WARPFIELD_HPP
#define WARPEST_WARPFIELD_HPP

#include <optional>

#include "warpest/geometry.hpp"

namespace warpest {

/// A candidate warped-product soliton restricted to the base: warping
/// function f > 0, soliton function rho, fiber dimension k and fiber
/// Einstein constant theta.
struct SolitonInstance {
  ModelBase base;
  ScalarProfile f;
  ScalarProfile rho;
  int k;
  double theta;

  SolitonInstance(ModelBase base, ScalarProfile f, ScalarProfile rho, int k, double theta);
};

// Changes of variable: v = f^k, u = log v = k log f.
ScalarProfile f_to_v(const ScalarProfile& f, int k);
ScalarProfile v_to_f(const ScalarProfile& v, int k);
ScalarProfile v_to_u(const ScalarProfile& v);

/// Pointwise fiber Einstein constant
///   theta(r) = rho f^2 + f (Lap f) + (k-1) |grad f|^2 - f h' f',
/// with the plain (non-drifted) Laplacian; constant exactly when the
/// instance solves the base equation.
ScalarProfile theta_profile(const SolitonInstance& instance,
                            OriginPolicy origin = OriginPolicy::reject);

/// Pointwise residual of the warping equation in the v variable:
///   Lap_h v + rho k v - theta k v^(1-2/k).
ScalarProfile warp_residual(const ModelBase& base, const ScalarProfile& v,
                            const ScalarProfile& rho, int k, double theta,
                            OriginPolicy origin = OriginPolicy::reject);

/// Max |residual| over the interior nodes 1..count-2 (the nodes the
/// collocation operator lives on; the end nodes are boundary rows whose
/// one-sided truncation constants are ~70x the central ones).
double warp_residual_interior_max(const ModelBase& base, const ScalarProfile& v,
                                  const ScalarProfile& rho, int k, double theta);

/// Same, but each node is scaled by max(1, k v_i) -- the natural size of the
/// equation's terms. This is the measure that decides whether a sampled
/// closed form counts as a solution: the raw residual of an exact solution
/// grows with v through the truncation term, the scaled one does not.
double warp_residual_scaled_max(const ModelBase& base, const ScalarProfile& v,
                                const ScalarProfile& rho, int k, double theta);

/// Residual of the base soliton equation Ric + Hess h = rho g + (k/f) Hess f
/// in the radial and tangential directions (tangential absent for n = 1).
struct SolitonResidual {
  ScalarProfile radial;
  std::optional<ScalarProfile> tangential;
};
SolitonResidual soliton_residual(const SolitonInstance& instance);

enum class SolveMethod { shooting, collocation };
enum class BoundaryCondition { free_slope, neumann, dirichlet };

/// Solver configuration. slope0 empty means "auto-zero" (v'(r_min) = 0).
/// With boundary = free_slope the problem is an initial-value integration
/// from (v0, slope0); neumann/dirichlet impose v'(r_max) or v(r_max) equal
/// to boundary_value instead of the initial slope.
struct SolveConfig {
  double v0 = 1.0;
  std::optional<double> slope0;
  SolveMethod method = SolveMethod::shooting;
  double tol = 1e-8;
  int max_iter = 50;
  BoundaryCondition boundary = BoundaryCondition::free_slope;
  double boundary_value = 0.0;
};

/// Solves Lap_h v + rho k v - theta k v^(1-2/k) = 0 on the base grid.
/// Both methods finish with a damped-Newton collocation pass, so the
/// returned profile satisfies the discrete equation at every interior node
/// to within config.tol (re-checked before returning). Throws
/// PositivityLost when v crosses zero and NoConvergence when the iteration
/// stalls or the solution blows past the growth guard.
ScalarProfile solve_warp_ode(const ModelBase& base, const ScalarProfile& rho, double theta,
                             int k, const SolveConfig& config);

/// Raw adaptive integration of the same equation as an IVP, without the
/// positivity requirement turning into an exception: the trace records how
/// the candidate failed. Used by the nonexistence witnesses.
struct IvpTrace {
  enum class Status { completed, positivity_lost, growth_unbounded };
  std::vector<double> r;
  std::vector<double> v;
  std::vector<double> dv;
  Status status = Status::completed;
  double crossing_radius = 0.0;   // valid when positivity_lost
  double max_gradient_ratio = 0.0;  // max of |v'| / (k v) seen, i.e. |grad f|/f
};
IvpTrace integrate_warp_ivp(const ModelBase& base, const ScalarProfile& rho, double theta,
                            int k, double v0, double slope0, double growth_bound = 1e12);

}  // namespace warpest

#endif  // WARPEST_WARPFIELD_HPP
