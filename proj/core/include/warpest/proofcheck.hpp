#ifndef WARPEST_PROOFCHECK_HPP
#define WARPEST_PROOFCHECK_HPP

#include <string>
#include <vector>

#include "warpest/bounds.hpp"

namespace warpest {

/// Cutoff profile xi: 1 on [0,1], 0 on [2,inf), monotone transition on [1,2]
/// with certified bounds -c1 <= xi'/sqrt(xi) <= 0 and xi'' >= -c2.
enum class CutoffFamily { quartic_poly, cos4, smooth_bump };

const char* to_string(CutoffFamily family);
CutoffFamily cutoff_family_from_string(const std::string& name);

double cutoff_value(CutoffFamily family, double t);
double cutoff_slope(CutoffFamily family, double t);
double cutoff_curvature(CutoffFamily family, double t);

struct CutoffSpec {
  CutoffFamily family;
  double c1 = 0.0;  // certified max |xi'/sqrt(xi)| over the transition, +1%
  double c2 = 0.0;  // certified max(0, -min xi''), +1%
  int certification_samples = 0;
  // The quartic family is C^1 but not C^2 at the transition joints; its
  // curvature certificate excludes the two joint points.
  bool curvature_joints_excluded = false;
};

CutoffSpec build_cutoff(CutoffFamily family, int samples = 10000);

/// psi(r) = xi(r/R) sampled on the grid.
ScalarProfile cutoff_profile(CutoffFamily family, const RadialGrid& grid, double R);

/// Margins of the two cutoff inequalities on the base:
///   slope form:      |grad psi|^2 / psi <= c1^2 / R^2        (where psi > 0)
///   laplacian form:  Lap_h psi >= -((n-1+R sqrt(nK)) c1 + c2) / R^2
struct CutoffMarginSample {
  double r;
  double psi;
  double slope_margin;
  double laplacian_margin;
};
struct CutoffMarginReport {
  std::vector<CutoffMarginSample> samples;
  double slope_margin_min = 0.0;
  double laplacian_margin_min = 0.0;
};
CutoffMarginReport cutoff_gradient_check(const CutoffSpec& spec, const ModelBase& base,
                                         double K, double R);

/// Margin of the weighted Bochner inequality
///   (1/2) Lap_h |grad u|^2 >= (Lap_h u)^2/(n+m) + <grad u, grad Lap_h u>
///                             - K |grad u|^2
/// at the requested radii, everything by finite differences.
struct MarginSample {
  double r;
  double margin;
};
std::vector<MarginSample> bochner_check(const ModelBase& base, const ScalarProfile& u,
                                        double K, const std::vector<double>& radii);

/// Margin of the drift-Laplacian inequality for the Harnack quantity
///   L = beta |grad u|^2 + rho k - theta k e^(-2u/k),  u = k log f,
/// along solutions:
///   Lap_h L >= 2 beta (Lap_h u)^2/(n+m) + 2(1-beta) k <grad u, grad rho>
///              - 2 <grad u, grad L> - 2 beta K |grad u|^2 + k Lap_h rho
///              - 2 theta e^(-2u/k) ((beta-1+2/k) |grad u|^2 + L).
/// Throws NotASolution when the instance fails the residual gate: the
/// inequality is only claimed along solutions.
std::vector<MarginSample> harnack_laplacian_check(const SolitonInstance& instance, double beta,
                                                  double K, const std::vector<double>& radii,
                                                  double residual_gate = kSolutionGate);

/// The Harnack quantity L as a profile (exposed for the max-point trace).
ScalarProfile harnack_quantity(const SolitonInstance& instance, double beta);

/// Upper bound for az^2 - bz <= c with a > 0, b, c >= 0:
///   z <= 2b/a + sqrt(c/a),
/// always at least the positive root (b + sqrt(b^2+4ac)) / (2a).
double quadratic_root_bound(double a, double b, double c);

/// Grid argmax of G = psi * L with the FD gradient norm there. G_max <= 0
/// means the localized quantity never goes positive and the estimate holds
/// trivially on the ball.
struct MaxPointTrace {
  double r = 0.0;
  int index = 0;
  double value = 0.0;
  double gradient_norm = 0.0;
  bool positive_branch = false;  // G_max > 0
};
MaxPointTrace trace_profile_max(const ScalarProfile& quantity, const ScalarProfile& psi);
MaxPointTrace max_point_trace(const SolitonInstance& instance, double beta,
                              const CutoffSpec& cutoff, double R);

}  // namespace warpest

#endif  // WARPEST_PROOFCHECK_HPP
