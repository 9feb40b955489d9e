#ifndef WARPEST_BOUNDS_HPP
#define WARPEST_BOUNDS_HPP

#include <optional>
#include <span>
#include <vector>

#include "warpest/warpfield.hpp"

namespace warpest {

/// Parameters feeding the gradient-estimate constants. beta must lie in
/// (max(0, 1-2/k), 1); eps in (0,1). R finite selects the local estimate on
/// B(p,R); r_infinite() selects the global one (the cutoff terms drop).
struct EstimateParams {
  int n = 1;
  double m = 1.0;
  int k = 1;
  double beta = 0.5;
  double eps = 0.5;
  double K = 0.0;
  double gamma = 0.0;
  double c1 = 2.0;
  double c2 = 16.0;
  double R = 1.0;
  double theta = 0.0;
  std::optional<double> M;  // sup f^-2 over B(p,2R); computed from f when absent

  static double beta_window_low(int k);
  void validate() const;  // throws ParamOutOfRange with the offending field
  bool r_infinite() const;
  static double infinite_radius();
};

/// The evaluated constants of the estimate. H is the cutoff contribution,
/// P the local-term, Q the rho/K-term, S the positive-theta correction.
struct ConstantsBundle {
  double H = 0.0;
  double P = 0.0;
  double Q = 0.0;
  double S = 0.0;
  double M = 0.0;
};

ConstantsBundle compute_constants(const EstimateParams& params);

/// Right-hand side of the estimate for the given parameters:
///   theta < 0:  (n+m) P / (k^2 beta) + sqrt((n+m)/(2 beta k^4)) Q^(1/2)
///   theta >= 0: (n+m)(P + 2 theta M) / (k^2 beta)
///               + sqrt((n+m)/(2 beta k^4)) (Q+S)^(1/2)
/// with P = 0 in the global case.
double estimate_rhs(const EstimateParams& params, const ConstantsBundle& c);

/// Pointwise left-hand side beta |grad f|^2 / f^2 + rho/k - theta/(k f^2).
ScalarProfile estimate_lhs(const SolitonInstance& instance, double beta);

/// Verdict of one estimate check over a region of the base.
struct BoundReport {
  ScalarProfile lhs;
  double rhs = 0.0;
  double margin_min = 0.0;  // min over region of rhs - lhs
  bool pass = false;
  double witness_r = 0.0;   // node of minimal margin
  int witness_index = 0;
  double solution_residual = 0.0;  // interior max of the warp residual
  bool is_solution = false;        // residual below the solution gate
  ConstantsBundle constants;
  EstimateParams params;
};

/// Pass tolerance: margin_min >= -1e-6 * max(1, |rhs|).
inline constexpr double kBoundPassTol = 1e-6;
/// An instance counts as a solution of the warping equation when the
/// interior residual stays below this gate.
inline constexpr double kSolutionGate = 1e-6;

BoundReport local_estimate(const SolitonInstance& instance, EstimateParams params);
BoundReport global_estimate(const SolitonInstance& instance, EstimateParams params);

/// max f^-2 over grid nodes with r in [r_a, r_b].
double sup_inverse_f_sq(const ScalarProfile& f, double r_a, double r_b);

/// gamma = max |rho'| over grid nodes with r in [r_a, r_b].
double gamma_from_profile(const ScalarProfile& rho, double r_a, double r_b);

/// Exhaustive minimization of the applicable rhs over the admissible part of
/// the (beta, eps) grids; ties break to the lexicographically smallest pair.
struct SweepPoint {
  double beta;
  double eps;
  double rhs;
  bool admissible;
};
struct SweepResult {
  double beta;
  double eps;
  double rhs;
  std::vector<SweepPoint> table;
};
SweepResult optimize_rhs(const SolitonInstance& instance, const EstimateParams& params,
                         std::span<const double> beta_grid, std::span<const double> eps_grid);

}  // namespace warpest

#endif  // WARPEST_BOUNDS_HPP
