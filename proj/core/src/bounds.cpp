#include "warpest/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "warpest/fd.hpp"

namespace warpest {

double EstimateParams::beta_window_low(int k) {
  return std::max(0.0, 1.0 - 2.0 / static_cast<double>(k));
}

double EstimateParams::infinite_radius() { return std::numeric_limits<double>::infinity(); }

bool EstimateParams::r_infinite() const { return std::isinf(R); }

void EstimateParams::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::param_out_of_range, what);
  };
  if (n < 1) fail("n must be >= 1");
  if (!(m > 0.0) || !std::isfinite(m)) fail("m must be > 0");
  if (k < 1) fail("k must be >= 1");
  const double lo = beta_window_low(k);
  if (!(beta > lo) || !(beta < 1.0)) {
    fail("beta = " + std::to_string(beta) + " outside the admissible window (max(0, 1-2/k), 1) = (" +
         std::to_string(lo) + ", 1) for k = " + std::to_string(k));
  }
  if (!(eps > 0.0) || !(eps < 1.0)) fail("eps must lie in (0, 1)");
  if (!(K >= 0.0)) fail("K must be >= 0");
  if (!(gamma >= 0.0)) fail("gamma must be >= 0");
  if (!r_infinite()) {
    if (!(R > 0.0)) fail("R must be > 0 (or infinite for the global estimate)");
    if (!(c1 > 0.0)) fail("c1 must be > 0");
    if (!(c2 > 0.0)) fail("c2 must be > 0");
  }
  if (M && !(*M >= 0.0)) fail("M must be >= 0");
  if (!std::isfinite(theta)) fail("theta must be finite");
}

ConstantsBundle compute_constants(const EstimateParams& p) {
  p.validate();
  const double nm = p.n + p.m;
  const double beta = p.beta;
  const double one_minus = 1.0 - beta;

  ConstantsBundle c;
  if (!p.r_infinite()) {
    // H = ((n-1 + R sqrt(nK)) c1 + c2 + 2 c1^2) / R^2
    c.H = ((p.n - 1 + p.R * std::sqrt(p.n * p.K)) * p.c1 + p.c2 + 2.0 * p.c1 * p.c1) /
          (p.R * p.R);
    c.P = nm * p.c1 * p.c1 / (4.0 * p.R * p.R * beta * one_minus) + c.H;
  }

  const double kg = p.k * p.gamma;
  const double q_inner = (nm / 4.0) * (kg * kg * kg * kg) * (one_minus * one_minus) /
                         (beta * beta * beta * beta) / p.eps;
  c.Q = 1.5 * beta * std::cbrt(q_inner) +
        0.5 * nm * beta / (1.0 - p.eps) / (one_minus * one_minus) * p.K * p.K;

  // M only matters when theta > 0 (it multiplies theta everywhere).
  if (p.theta > 0.0 && !p.M) {
    throw Error(ErrorCode::missing_bound, "theta > 0 needs M = sup f^-2");
  }
  const double M = p.M.value_or(0.0);
  const double shift = beta - 1.0 + 2.0 / static_cast<double>(p.k);
  const double t = M * p.theta * shift / beta;
  c.S = beta * nm / (2.0 * (1.0 - p.eps) * one_minus * one_minus) *
        (t * t + 2.0 * p.K * M * p.theta * shift / beta);
  c.M = M;
  return c;
}

double estimate_rhs(const EstimateParams& p, const ConstantsBundle& c) {
  const double nm = p.n + p.m;
  const double kk = static_cast<double>(p.k);
  const double root_factor = std::sqrt(nm / (2.0 * p.beta * kk * kk * kk * kk));
  if (p.theta < 0.0) {
    return nm * c.P / (kk * kk * p.beta) + root_factor * std::sqrt(c.Q);
  }
  return nm * (c.P + 2.0 * p.theta * c.M) / (kk * kk * p.beta) +
         root_factor * std::sqrt(c.Q + c.S);
}

ScalarProfile estimate_lhs(const SolitonInstance& inst, double beta) {
  const double lo = EstimateParams::beta_window_low(inst.k);
  if (!(beta > lo) || !(beta < 1.0)) {
    throw Error(ErrorCode::param_out_of_range, "beta outside the admissible window");
  }
  ScalarProfile grad_sq = gradient_norm_sq(inst.base, inst.f);
  std::vector<double> out(inst.f.size());
  for (int i = 0; i < inst.f.size(); ++i) {
    const double f = inst.f[i];
    out[i] = beta * grad_sq[i] / (f * f) + inst.rho[i] / inst.k -
             inst.theta / (inst.k * f * f);
  }
  return ScalarProfile(inst.f.grid(), std::move(out), "estimate lhs");
}

double sup_inverse_f_sq(const ScalarProfile& f, double r_a, double r_b) {
  if (r_a > r_b) std::swap(r_a, r_b);
  const double slack = 1e-9 * f.grid().spacing();
  double sup = 0.0;
  bool any = false;
  for (int i = 0; i < f.size(); ++i) {
    const double r = f.r(i);
    if (r < r_a - slack || r > r_b + slack) continue;
    if (!(f[i] > 0.0)) {
      throw Error(ErrorCode::non_positive_input, "f must be positive on the region");
    }
    sup = std::max(sup, 1.0 / (f[i] * f[i]));
    any = true;
  }
  if (!any) throw Error(ErrorCode::grid_mismatch, "region contains no grid nodes");
  return sup;
}

double gamma_from_profile(const ScalarProfile& rho, double r_a, double r_b) {
  if (r_a > r_b) std::swap(r_a, r_b);
  ScalarProfile d = fd::derivative(rho);
  const double slack = 1e-9 * rho.grid().spacing();
  double sup = 0.0;
  bool any = false;
  for (int i = 0; i < d.size(); ++i) {
    const double r = d.r(i);
    if (r < r_a - slack || r > r_b + slack) continue;
    sup = std::max(sup, std::abs(d[i]));
    any = true;
  }
  if (!any) throw Error(ErrorCode::grid_mismatch, "region contains no grid nodes");
  return sup;
}

namespace {

BoundReport run_estimate(const SolitonInstance& inst, EstimateParams params, bool global) {
  const RadialGrid& grid = inst.base.grid();
  if (global) {
    params.R = EstimateParams::infinite_radius();
  } else if (params.r_infinite()) {
    throw Error(ErrorCode::param_out_of_range, "local estimate needs finite R");
  }
  params.n = inst.base.n();
  params.m = inst.base.m();
  params.k = inst.k;
  params.theta = inst.theta;

  if (inst.theta >= 0.0 && !params.M) {
    // M = sup f^-2 over B(p, 2R) (whole base for the global estimate).
    const double hi = global ? grid.r_max() : std::min(grid.r_max(), 2.0 * params.R);
    params.M = sup_inverse_f_sq(inst.f, grid.r_min(), hi);
  }
  if (inst.theta < 0.0 && !params.M) params.M = 0.0;

  ConstantsBundle constants = compute_constants(params);
  const double rhs = estimate_rhs(params, constants);

  ScalarProfile lhs = estimate_lhs(inst, params.beta);
  const double region_hi = global ? grid.r_max() : std::min(grid.r_max(), params.R);
  const double slack = 1e-9 * grid.spacing();

  BoundReport report{lhs, rhs, 0.0, false, 0.0, 0, 0.0, false, constants, params};
  double margin_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < lhs.size(); ++i) {
    if (lhs.r(i) > region_hi + slack) break;
    const double margin = rhs - lhs[i];
    if (margin < margin_min) {
      margin_min = margin;
      report.witness_index = i;
      report.witness_r = lhs.r(i);
    }
  }
  report.margin_min = margin_min;
  report.pass = margin_min >= -kBoundPassTol * std::max(1.0, std::abs(rhs));

  report.solution_residual =
      warp_residual_scaled_max(inst.base, f_to_v(inst.f, inst.k), inst.rho, inst.k, inst.theta);
  report.is_solution = report.solution_residual <= kSolutionGate;
  return report;
}

}  // namespace

BoundReport local_estimate(const SolitonInstance& inst, EstimateParams params) {
  return run_estimate(inst, std::move(params), /*global=*/false);
}

BoundReport global_estimate(const SolitonInstance& inst, EstimateParams params) {
  return run_estimate(inst, std::move(params), /*global=*/true);
}

SweepResult optimize_rhs(const SolitonInstance& inst, const EstimateParams& base_params,
                         std::span<const double> beta_grid, std::span<const double> eps_grid) {
  EstimateParams params = base_params;
  params.n = inst.base.n();
  params.m = inst.base.m();
  params.k = inst.k;
  params.theta = inst.theta;
  if (inst.theta >= 0.0 && !params.M) {
    const RadialGrid& grid = inst.base.grid();
    const double hi = params.r_infinite() ? grid.r_max()
                                          : std::min(grid.r_max(), 2.0 * params.R);
    params.M = sup_inverse_f_sq(inst.f, grid.r_min(), hi);
  }

  std::vector<double> betas(beta_grid.begin(), beta_grid.end());
  std::vector<double> epss(eps_grid.begin(), eps_grid.end());
  std::sort(betas.begin(), betas.end());
  std::sort(epss.begin(), epss.end());

  const double lo = EstimateParams::beta_window_low(params.k);
  SweepResult result;
  result.rhs = std::numeric_limits<double>::infinity();
  bool found = false;
  for (double beta : betas) {
    for (double eps : epss) {
      SweepPoint point{beta, eps, std::numeric_limits<double>::quiet_NaN(), false};
      if (beta > lo && beta < 1.0 && eps > 0.0 && eps < 1.0) {
        EstimateParams local = params;
        local.beta = beta;
        local.eps = eps;
        point.rhs = estimate_rhs(local, compute_constants(local));
        point.admissible = true;
        // Strict < keeps the first (lexicographically smallest) minimizer.
        if (!found || point.rhs < result.rhs) {
          found = true;
          result.beta = beta;
          result.eps = eps;
          result.rhs = point.rhs;
        }
      }
      result.table.push_back(point);
    }
  }
  if (!found) {
    throw Error(ErrorCode::empty_admissible_set,
                "no (beta, eps) grid point lies in the admissible window");
  }
  return result;
}

}  // namespace warpest
