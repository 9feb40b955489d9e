#include "warpest/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "warpest/fd.hpp"

namespace warpest {

namespace {

constexpr double kPi = 3.14159265358979323846;

double phi_of_kind(BaseKind kind, double r) {
  switch (kind) {
    case BaseKind::line_segment: return 1.0;
    case BaseKind::euclidean_cone: return r;
    case BaseKind::hyperbolic: return std::sinh(r);
    case BaseKind::spherical: return std::sin(r);
  }
  return 1.0;
}

void check_kind_domain(BaseKind kind, double r_min, double r_max) {
  if (r_min < 0.0) {
    throw Error(ErrorCode::domain_invalid, "radial domain must start at r >= 0");
  }
  if (kind == BaseKind::spherical && r_max >= kPi) {
    throw Error(ErrorCode::domain_invalid, "spherical base needs r_max < pi");
  }
}

}  // namespace

const char* to_string(BaseKind kind) {
  switch (kind) {
    case BaseKind::line_segment: return "line-segment";
    case BaseKind::euclidean_cone: return "euclidean-cone";
    case BaseKind::hyperbolic: return "hyperbolic";
    case BaseKind::spherical: return "spherical";
  }
  return "?";
}

BaseKind base_kind_from_string(const std::string& name) {
  if (name == "line-segment") return BaseKind::line_segment;
  if (name == "euclidean-cone") return BaseKind::euclidean_cone;
  if (name == "hyperbolic") return BaseKind::hyperbolic;
  if (name == "spherical") return BaseKind::spherical;
  throw Error(ErrorCode::domain_invalid, "unknown base kind '" + name + "'");
}

ModelBase::ModelBase(int n, BaseKind kind, ScalarProfile phi, ScalarProfile h, double m)
    : n_(n),
      kind_(kind),
      phi_(std::move(phi)),
      h_(std::move(h)),
      m_(m),
      phi_prime_(fd::derivative(phi_)),
      h_prime_(fd::derivative(h_)),
      weight_constant_(h_.max_value() == h_.min_value()) {
  if (n_ < 1) {
    throw Error(ErrorCode::param_out_of_range, "base dimension n must be >= 1");
  }
  if (!(m_ > 0.0) || !std::isfinite(m_)) {
    throw Error(ErrorCode::param_out_of_range, "Bakry-Emery parameter m must be > 0");
  }
  require_same_grid(phi_, h_);
  check_kind_domain(kind_, grid().r_min(), grid().r_max());

  // phi must be positive away from the axis, and match the kind's closed form.
  for (int i = 0; i < phi_.size(); ++i) {
    const double r = phi_.r(i);
    if (r > grid().r_min() && !(phi_[i] > 0.0)) {
      throw Error(ErrorCode::domain_invalid, "phi must be positive on (r_min, r_max]");
    }
    if (n_ >= 2) {
      const double want = phi_of_kind(kind_, r);
      if (std::abs(phi_[i] - want) > 1e-9 * std::max(1.0, std::abs(want))) {
        throw Error(ErrorCode::domain_invalid,
                    "phi profile does not match the declared base kind");
      }
    }
  }
}

ModelBase build_radial_base(BaseKind kind, int n, double r_min, double r_max, int count,
                            std::vector<double> h_values, double m) {
  check_kind_domain(kind, r_min, r_max);
  RadialGrid grid(r_min, r_max, count);
  // The angular term is absent for n = 1, where phi degenerates to 1.
  ScalarProfile phi = (n == 1)
                          ? ScalarProfile::constant(grid, 1.0, "phi")
                          : ScalarProfile::sample(
                                grid, [kind](double r) { return phi_of_kind(kind, r); }, "phi");
  ScalarProfile h(grid, std::move(h_values), "h");
  return ModelBase(n, kind, std::move(phi), std::move(h), m);
}

ModelBase build_radial_base(BaseKind kind, int n, double r_min, double r_max, int count,
                            double h_constant, double m) {
  return build_radial_base(kind, n, r_min, r_max, count,
                           std::vector<double>(static_cast<size_t>(count), h_constant), m);
}

double ModelBase::angular_coefficient(int i) const {
  if (n_ == 1) return 0.0;
  return (n_ - 1) * phi_prime_[i] / phi_[i];
}

double ModelBase::angular_coefficient_at(double r) const {
  if (n_ == 1) return 0.0;
  switch (kind_) {
    case BaseKind::line_segment: return 0.0;
    case BaseKind::euclidean_cone: return (n_ - 1) / r;
    case BaseKind::hyperbolic: return (n_ - 1) / std::tanh(r);
    case BaseKind::spherical: return (n_ - 1) / std::tan(r);
  }
  return 0.0;
}

double ModelBase::drift_coefficient_at(double r) const {
  if (weight_constant_) return 0.0;
  return fd::interpolate(h_prime_, r);
}

ScalarProfile gradient_norm_sq(const ModelBase& base, const ScalarProfile& u) {
  require_same_grid(base.grid(), u.grid());
  ScalarProfile du = fd::derivative(u);
  return du.map([](double d) { return d * d; }, "|grad " + u.label() + "|^2");
}

namespace {

// Shared core of the plain and drifting Laplacians.
ScalarProfile radial_laplacian(const ModelBase& base, const ScalarProfile& u, bool with_drift,
                               OriginPolicy origin) {
  require_same_grid(base.grid(), u.grid());
  const RadialGrid& grid = u.grid();
  const int n = base.n();
  const bool has_axis = grid.r_min() == 0.0 && n >= 2;
  if (has_axis && origin == OriginPolicy::reject) {
    throw Error(ErrorCode::singular_origin,
                "grid includes r = 0 with n >= 2; start at r_min > 0 or request the "
                "even-extension origin treatment");
  }

  ScalarProfile du = fd::derivative(u);
  ScalarProfile d2u = fd::second_derivative(u);
  std::vector<double> out(u.size());
  const int start = has_axis ? 1 : 0;
  for (int i = start; i < u.size(); ++i) {
    double val = d2u[i] + base.angular_coefficient(i) * du[i];
    if (with_drift) val -= base.h_prime()[i] * du[i];
    out[i] = val;
  }
  if (has_axis) {
    // Even extension of smooth radial data: u'(0) = 0 and the angular term
    // tends to (n-1) u''(0), so the Laplacian at the axis is n u''(0).
    const double h = grid.spacing();
    const double d2_even = (-2.0 * u[2] + 32.0 * u[1] - 30.0 * u[0]) / (12.0 * h * h);
    out[0] = n * d2_even;
  }
  return ScalarProfile(grid, std::move(out),
                       (with_drift ? "drift_lap " : "lap ") + u.label());
}

}  // namespace

ScalarProfile laplacian(const ModelBase& base, const ScalarProfile& u, OriginPolicy origin) {
  return radial_laplacian(base, u, /*with_drift=*/false, origin);
}

ScalarProfile drift_laplacian(const ModelBase& base, const ScalarProfile& u,
                              OriginPolicy origin) {
  return radial_laplacian(base, u, /*with_drift=*/true, origin);
}

RicciEigenvalues bakry_emery_eigenvalues(const ModelBase& base) {
  const RadialGrid& grid = base.grid();
  const int n = base.n();
  if (grid.r_min() == 0.0 && n >= 2) {
    throw Error(ErrorCode::singular_origin,
                "curvature eigenvalues need r_min > 0 when n >= 2");
  }
  ScalarProfile hp = base.h_prime();
  ScalarProfile hpp = fd::second_derivative(base.h());
  const double m = base.m();

  std::vector<double> radial(grid.count());
  std::vector<double> tangential;
  const bool has_tangential = n >= 2;
  if (has_tangential) tangential.resize(grid.count());

  ScalarProfile phipp = fd::second_derivative(base.phi());
  for (int i = 0; i < grid.count(); ++i) {
    double ric_rr = 0.0;
    if (n >= 2) ric_rr = -(n - 1) * phipp[i] / base.phi()[i];
    radial[i] = ric_rr + hpp[i] - hp[i] * hp[i] / m;
    if (has_tangential) {
      const double phi = base.phi()[i];
      const double phip = base.phi_prime()[i];
      double ric_tt = -phipp[i] / phi - (n - 2) * (phip * phip - 1.0) / (phi * phi);
      tangential[i] = ric_tt + (phip / phi) * hp[i];
    }
  }

  RicciEigenvalues out{ScalarProfile(grid, std::move(radial), "ric_m radial"), std::nullopt};
  if (has_tangential) {
    out.tangential = ScalarProfile(grid, std::move(tangential), "ric_m tangential");
  }
  return out;
}

double bakry_emery_lower_bound(const ModelBase& base, double r_a, double r_b) {
  const RadialGrid& grid = base.grid();
  if (r_a > r_b) std::swap(r_a, r_b);
  RicciEigenvalues eig = bakry_emery_eigenvalues(base);
  const double slack = 1e-9 * grid.spacing();
  double min_eig = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int i = 0; i < grid.count(); ++i) {
    const double r = grid.node(i);
    if (r < r_a - slack || r > r_b + slack) continue;
    any = true;
    min_eig = std::min(min_eig, eig.radial[i]);
    if (eig.tangential) min_eig = std::min(min_eig, (*eig.tangential)[i]);
  }
  if (!any) {
    throw Error(ErrorCode::grid_mismatch, "region [r_a, r_b] contains no grid nodes");
  }
  // Eigenvalue dips below the finite-difference noise floor count as zero,
  // so flat bases certify K = 0 exactly.
  const double K = std::max(0.0, -min_eig);
  return K < 1e-9 ? 0.0 : K;
}

std::vector<ComparisonSample> qian_comparison_check(const ModelBase& base, double K,
                                                    const std::vector<double>& radii) {
  if (K < 0.0) throw Error(ErrorCode::param_out_of_range, "K must be >= 0");
  const RadialGrid& grid = base.grid();
  const int n = base.n();
  ScalarProfile r_sq = ScalarProfile::sample(grid, [](double r) { return r * r; }, "r^2");
  ScalarProfile r_lin = ScalarProfile::sample(grid, [](double r) { return r; }, "r");
  ScalarProfile lap_sq = drift_laplacian(base, r_sq);
  ScalarProfile lap_lin = drift_laplacian(base, r_lin);

  std::vector<ComparisonSample> out;
  out.reserve(radii.size());
  for (double r : radii) {
    const int i = grid.nearest_index(r);
    const double rr = grid.node(i);
    ComparisonSample s{};
    s.r = rr;
    s.lhs_sq = lap_sq[i];
    s.rhs_sq = n * (1.0 + std::sqrt(1.0 + 4.0 * K * rr * rr / n));
    s.margin_sq = s.rhs_sq - s.lhs_sq;
    s.lhs_dist = lap_lin[i];
    s.rhs_dist = (n - 1) / rr + std::sqrt(n * K);
    s.margin_dist = s.rhs_dist - s.lhs_dist;
    out.push_back(s);
  }
  return out;
}

}  // namespace warpest
