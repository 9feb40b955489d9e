#include "warpest/proofcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "warpest/fd.hpp"

namespace warpest {

namespace {

constexpr double kPi = 3.14159265358979323846;

// C-infinity transition built from exp(-1/t): value, first and second
// derivative of w(s) = b(1-s) / (b(1-s) + b(s)) on (0,1).
struct BumpEval {
  double w, dw, d2w;
};

BumpEval bump_eval(double s) {
  if (s <= 0.0) return {1.0, 0.0, 0.0};
  if (s >= 1.0) return {0.0, 0.0, 0.0};
  const double t = 1.0 - s;
  const double f = std::exp(-1.0 / t);
  const double g = std::exp(-1.0 / s);
  const double fp = -f / (t * t);                       // d/ds of b(1-s)
  const double gp = g / (s * s);                        // d/ds of b(s)
  const double fpp = f / (t * t * t * t) - 2.0 * f / (t * t * t);
  const double gpp = g / (s * s * s * s) - 2.0 * g / (s * s * s);
  const double D = f + g;
  const double N = fp * g - f * gp;
  const double Np = fpp * g - f * gpp;
  const double Dp = fp + gp;
  const double w = f / D;
  const double dw = N / (D * D);
  const double d2w = Np / (D * D) - 2.0 * N * Dp / (D * D * D);
  return {w, dw, d2w};
}

}  // namespace

const char* to_string(CutoffFamily family) {
  switch (family) {
    case CutoffFamily::quartic_poly: return "quartic-poly";
    case CutoffFamily::cos4: return "cos4";
    case CutoffFamily::smooth_bump: return "smooth-bump";
  }
  return "?";
}

CutoffFamily cutoff_family_from_string(const std::string& name) {
  if (name == "quartic-poly") return CutoffFamily::quartic_poly;
  if (name == "cos4") return CutoffFamily::cos4;
  if (name == "smooth-bump") return CutoffFamily::smooth_bump;
  throw Error(ErrorCode::unsupported_family, "unknown cutoff family '" + name + "'");
}

double cutoff_value(CutoffFamily family, double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double s = t - 1.0;
  switch (family) {
    case CutoffFamily::quartic_poly: {
      const double q = 1.0 - s * s;
      return q * q;
    }
    case CutoffFamily::cos4: {
      const double c = std::cos(kPi * s / 2.0);
      return c * c * c * c;
    }
    case CutoffFamily::smooth_bump:
      return bump_eval(s).w;
  }
  return 0.0;
}

double cutoff_slope(CutoffFamily family, double t) {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  const double s = t - 1.0;
  switch (family) {
    case CutoffFamily::quartic_poly:
      return -4.0 * s * (1.0 - s * s);
    case CutoffFamily::cos4: {
      const double a = kPi * s / 2.0;
      const double c = std::cos(a);
      return -2.0 * kPi * c * c * c * std::sin(a);
    }
    case CutoffFamily::smooth_bump:
      return bump_eval(s).dw;
  }
  return 0.0;
}

double cutoff_curvature(CutoffFamily family, double t) {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  const double s = t - 1.0;
  switch (family) {
    case CutoffFamily::quartic_poly:
      return -4.0 + 12.0 * s * s;
    case CutoffFamily::cos4: {
      const double c = std::cos(kPi * s / 2.0);
      const double c2 = c * c;
      return -kPi * kPi * (4.0 * c2 * c2 - 3.0 * c2);
    }
    case CutoffFamily::smooth_bump:
      return bump_eval(s).d2w;
  }
  return 0.0;
}

CutoffSpec build_cutoff(CutoffFamily family, int samples) {
  if (samples < 100) {
    throw Error(ErrorCode::param_out_of_range, "certification needs at least 100 samples");
  }
  CutoffSpec spec;
  spec.family = family;
  spec.certification_samples = samples;
  spec.curvature_joints_excluded = family == CutoffFamily::quartic_poly;

  double max_ratio = 0.0;
  double min_curvature = 0.0;
  for (int j = 0; j <= samples; ++j) {
    const double s = static_cast<double>(j) / samples;
    const double t = 1.0 + s;
    // The ratio xi'/sqrt(xi) is a one-sided limit at xi = 0: skip the
    // terminal node and read it off the approach.
    if (j > 0 && j < samples) {
      const double xi = cutoff_value(family, t);
      const double ratio = cutoff_slope(family, t) / std::sqrt(xi);
      if (ratio > 1e-12) {
        throw Error(ErrorCode::unsupported_family, "cutoff slope must be nonpositive");
      }
      max_ratio = std::max(max_ratio, -ratio);
    }
    const bool at_joint = (j == 0 || j == samples);
    if (!(spec.curvature_joints_excluded && at_joint) && j > 0 && j < samples) {
      min_curvature = std::min(min_curvature, cutoff_curvature(family, t));
    }
  }
  spec.c1 = max_ratio * 1.01;
  spec.c2 = std::max(0.0, -min_curvature) * 1.01;
  return spec;
}

ScalarProfile cutoff_profile(CutoffFamily family, const RadialGrid& grid, double R) {
  if (!(R > 0.0)) throw Error(ErrorCode::param_out_of_range, "R must be > 0");
  return ScalarProfile::sample(
      grid, [family, R](double r) { return cutoff_value(family, r / R); }, "psi");
}

CutoffMarginReport cutoff_gradient_check(const CutoffSpec& spec, const ModelBase& base,
                                         double K, double R) {
  if (K < 0.0) throw Error(ErrorCode::param_out_of_range, "K must be >= 0");
  const RadialGrid& grid = base.grid();
  ScalarProfile psi = cutoff_profile(spec.family, grid, R);
  ScalarProfile dpsi = fd::derivative(psi);
  ScalarProfile lap_psi = drift_laplacian(base, psi);

  const double slope_bound = spec.c1 * spec.c1 / (R * R);
  const double lap_bound =
      ((base.n() - 1 + R * std::sqrt(base.n() * K)) * spec.c1 + spec.c2) / (R * R);

  CutoffMarginReport report;
  report.slope_margin_min = std::numeric_limits<double>::infinity();
  report.laplacian_margin_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.count(); ++i) {
    CutoffMarginSample s{};
    s.r = grid.node(i);
    s.psi = psi[i];
    // The slope inequality is undefined where psi = 0.
    s.slope_margin = psi[i] > 0.0
                         ? slope_bound - dpsi[i] * dpsi[i] / psi[i]
                         : std::numeric_limits<double>::quiet_NaN();
    s.laplacian_margin = lap_psi[i] + lap_bound;
    if (psi[i] > 0.0) {
      report.slope_margin_min = std::min(report.slope_margin_min, s.slope_margin);
    }
    report.laplacian_margin_min = std::min(report.laplacian_margin_min, s.laplacian_margin);
    report.samples.push_back(s);
  }
  return report;
}

std::vector<MarginSample> bochner_check(const ModelBase& base, const ScalarProfile& u,
                                        double K, const std::vector<double>& radii) {
  if (K < 0.0) throw Error(ErrorCode::param_out_of_range, "K must be >= 0");
  ScalarProfile grad_sq = gradient_norm_sq(base, u);
  ScalarProfile lap_grad_sq = drift_laplacian(base, grad_sq);
  ScalarProfile lap_u = drift_laplacian(base, u);
  ScalarProfile du = fd::derivative(u);
  ScalarProfile dlap_u = fd::derivative(lap_u);
  const double nm = base.n() + base.m();

  std::vector<MarginSample> out;
  out.reserve(radii.size());
  for (double r : radii) {
    const int i = base.grid().nearest_index(r);
    const double lhs = 0.5 * lap_grad_sq[i];
    const double rhs = lap_u[i] * lap_u[i] / nm + du[i] * dlap_u[i] - K * grad_sq[i];
    out.push_back({base.grid().node(i), lhs - rhs});
  }
  return out;
}

ScalarProfile harnack_quantity(const SolitonInstance& inst, double beta) {
  ScalarProfile u = inst.f.map(
      [k = inst.k](double f) { return k * std::log(f); }, "u");
  ScalarProfile grad_sq = gradient_norm_sq(inst.base, u);
  std::vector<double> out(u.size());
  for (int i = 0; i < u.size(); ++i) {
    const double f = inst.f[i];
    out[i] = beta * grad_sq[i] + inst.rho[i] * inst.k - inst.theta * inst.k / (f * f);
  }
  return ScalarProfile(u.grid(), std::move(out), "harnack quantity");
}

std::vector<MarginSample> harnack_laplacian_check(const SolitonInstance& inst, double beta,
                                                  double K, const std::vector<double>& radii,
                                                  double residual_gate) {
  const double lo = EstimateParams::beta_window_low(inst.k);
  if (!(beta > lo) || !(beta < 1.0)) {
    throw Error(ErrorCode::param_out_of_range, "beta outside the admissible window");
  }
  if (K < 0.0) throw Error(ErrorCode::param_out_of_range, "K must be >= 0");

  // The inequality is only claimed along solutions of the warp equation.
  const double residual =
      warp_residual_scaled_max(inst.base, f_to_v(inst.f, inst.k), inst.rho, inst.k, inst.theta);
  if (residual > residual_gate) {
    throw Error(ErrorCode::not_a_solution,
                "warp residual " + std::to_string(residual) + " exceeds the solution gate " +
                    std::to_string(residual_gate));
  }

  const ModelBase& base = inst.base;
  const int k = inst.k;
  ScalarProfile u = inst.f.map([k](double f) { return k * std::log(f); }, "u");
  ScalarProfile grad_sq = gradient_norm_sq(base, u);
  ScalarProfile du = fd::derivative(u);
  ScalarProfile lap_u = drift_laplacian(base, u);
  ScalarProfile L = harnack_quantity(inst, beta);
  ScalarProfile dL = fd::derivative(L);
  ScalarProfile lap_L = drift_laplacian(base, L);
  ScalarProfile drho = fd::derivative(inst.rho);
  ScalarProfile lap_rho = drift_laplacian(base, inst.rho);
  const double nm = base.n() + base.m();
  const double shift = beta - 1.0 + 2.0 / static_cast<double>(k);

  std::vector<MarginSample> out;
  out.reserve(radii.size());
  for (double r : radii) {
    const int i = base.grid().nearest_index(r);
    const double e2 = 1.0 / (inst.f[i] * inst.f[i]);  // e^(-2u/k) = f^-2
    const double rhs = 2.0 * beta * lap_u[i] * lap_u[i] / nm +
                       2.0 * (1.0 - beta) * k * du[i] * drho[i] - 2.0 * du[i] * dL[i] -
                       2.0 * beta * K * grad_sq[i] + k * lap_rho[i] -
                       2.0 * inst.theta * e2 * (shift * grad_sq[i] + L[i]);
    out.push_back({base.grid().node(i), lap_L[i] - rhs});
  }
  return out;
}

double quadratic_root_bound(double a, double b, double c) {
  if (!(a > 0.0)) throw Error(ErrorCode::param_out_of_range, "a must be > 0");
  if (b < 0.0 || c < 0.0) throw Error(ErrorCode::param_out_of_range, "b and c must be >= 0");
  return 2.0 * b / a + std::sqrt(c / a);
}

MaxPointTrace trace_profile_max(const ScalarProfile& quantity, const ScalarProfile& psi) {
  require_same_grid(quantity, psi);
  ScalarProfile G = ScalarProfile::zip(quantity, psi, [](double l, double p) { return l * p; },
                                       "G");
  MaxPointTrace trace;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < G.size(); ++i) {
    if (G[i] > best) {
      best = G[i];
      trace.index = i;
    }
  }
  trace.r = G.r(trace.index);
  trace.value = best;
  trace.positive_branch = best > 0.0;
  trace.gradient_norm = std::abs(fd::derivative(G)[trace.index]);
  return trace;
}

MaxPointTrace max_point_trace(const SolitonInstance& inst, double beta,
                              const CutoffSpec& cutoff, double R) {
  ScalarProfile L = harnack_quantity(inst, beta);
  ScalarProfile psi = cutoff_profile(cutoff.family, inst.base.grid(), R);
  return trace_profile_max(L, psi);
}

}  // namespace warpest
