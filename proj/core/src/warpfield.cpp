#include "warpest/warpfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "warpest/fd.hpp"

namespace warpest {

namespace {

void require_positive(const ScalarProfile& p, const char* what) {
  if (!p.positive()) {
    throw Error(ErrorCode::non_positive_input,
                std::string(what) + " must be positive at every node");
  }
}

double power_term(double v, double exponent) {
  // v^(1-2/k) via exp((1-2/k) log v); callers guarantee v > 0.
  if (exponent == 0.0) return 1.0;
  if (exponent == 1.0) return v;
  return std::exp(exponent * std::log(v));
}

}  // namespace

SolitonInstance::SolitonInstance(ModelBase base_in, ScalarProfile f_in, ScalarProfile rho_in,
                                 int k_in, double theta_in)
    : base(std::move(base_in)),
      f(std::move(f_in)),
      rho(std::move(rho_in)),
      k(k_in),
      theta(theta_in) {
  require_same_grid(base.grid(), f.grid());
  require_same_grid(base.grid(), rho.grid());
  require_positive(f, "warping function f");
  if (k < 1) throw Error(ErrorCode::param_out_of_range, "fiber dimension k must be >= 1");
  if (!std::isfinite(theta)) {
    throw Error(ErrorCode::param_out_of_range, "theta must be finite");
  }
}

ScalarProfile f_to_v(const ScalarProfile& f, int k) {
  require_positive(f, "f");
  if (k < 1) throw Error(ErrorCode::param_out_of_range, "k must be >= 1");
  return f.map([k](double x) { return std::pow(x, static_cast<double>(k)); }, "v");
}

ScalarProfile v_to_f(const ScalarProfile& v, int k) {
  require_positive(v, "v");
  if (k < 1) throw Error(ErrorCode::param_out_of_range, "k must be >= 1");
  return v.map([k](double x) { return std::pow(x, 1.0 / static_cast<double>(k)); }, "f");
}

ScalarProfile v_to_u(const ScalarProfile& v) {
  require_positive(v, "v");
  return v.map([](double x) { return std::log(x); }, "u");
}

ScalarProfile theta_profile(const SolitonInstance& inst, OriginPolicy origin) {
  ScalarProfile lap_f = laplacian(inst.base, inst.f, origin);
  ScalarProfile df = fd::derivative(inst.f);
  const ScalarProfile& hp = inst.base.h_prime();
  std::vector<double> out(inst.f.size());
  for (int i = 0; i < inst.f.size(); ++i) {
    const double f = inst.f[i];
    out[i] = inst.rho[i] * f * f + f * lap_f[i] + (inst.k - 1) * df[i] * df[i] -
             f * hp[i] * df[i];
  }
  return ScalarProfile(inst.f.grid(), std::move(out), "theta");
}

ScalarProfile warp_residual(const ModelBase& base, const ScalarProfile& v,
                            const ScalarProfile& rho, int k, double theta,
                            OriginPolicy origin) {
  require_same_grid(base.grid(), v.grid());
  require_same_grid(base.grid(), rho.grid());
  require_positive(v, "v");
  if (k < 1) throw Error(ErrorCode::param_out_of_range, "k must be >= 1");
  const double exponent = 1.0 - 2.0 / static_cast<double>(k);
  ScalarProfile lap = drift_laplacian(base, v, origin);
  std::vector<double> out(v.size());
  for (int i = 0; i < v.size(); ++i) {
    out[i] = lap[i] + rho[i] * k * v[i] - theta * k * power_term(v[i], exponent);
  }
  return ScalarProfile(v.grid(), std::move(out), "warp residual");
}

namespace {

ScalarProfile interior_residual(const ModelBase& base, const ScalarProfile& v,
                                const ScalarProfile& rho, int k, double theta) {
  return warp_residual(base, v, rho, k, theta,
                       base.grid().r_min() == 0.0 && base.n() >= 2
                           ? OriginPolicy::even_extension
                           : OriginPolicy::reject);
}

}  // namespace

double warp_residual_interior_max(const ModelBase& base, const ScalarProfile& v,
                                  const ScalarProfile& rho, int k, double theta) {
  ScalarProfile res = interior_residual(base, v, rho, k, theta);
  double mx = 0.0;
  for (int i = 1; i + 1 < res.size(); ++i) mx = std::max(mx, std::abs(res[i]));
  return mx;
}

double warp_residual_scaled_max(const ModelBase& base, const ScalarProfile& v,
                                const ScalarProfile& rho, int k, double theta) {
  ScalarProfile res = interior_residual(base, v, rho, k, theta);
  double mx = 0.0;
  for (int i = 1; i + 1 < res.size(); ++i) {
    mx = std::max(mx, std::abs(res[i]) / std::max(1.0, k * v[i]));
  }
  return mx;
}

SolitonResidual soliton_residual(const SolitonInstance& inst) {
  const ModelBase& base = inst.base;
  const RadialGrid& grid = base.grid();
  const int n = base.n();
  ScalarProfile df = fd::derivative(inst.f);
  ScalarProfile d2f = fd::second_derivative(inst.f);
  ScalarProfile hpp = fd::second_derivative(base.h());
  ScalarProfile phipp = fd::second_derivative(base.phi());
  const ScalarProfile& hp = base.h_prime();

  std::vector<double> radial(grid.count());
  std::vector<double> tangential;
  if (n >= 2) tangential.resize(grid.count());

  for (int i = 0; i < grid.count(); ++i) {
    const double f = inst.f[i];
    double ric_rr = 0.0;
    if (n >= 2) ric_rr = -(n - 1) * phipp[i] / base.phi()[i];
    radial[i] = ric_rr + hpp[i] - inst.rho[i] - (inst.k / f) * d2f[i];
    if (n >= 2) {
      const double phi = base.phi()[i];
      const double phip = base.phi_prime()[i];
      const double ric_tt = -phipp[i] / phi - (n - 2) * (phip * phip - 1.0) / (phi * phi);
      tangential[i] =
          ric_tt + (phip / phi) * hp[i] - inst.rho[i] - (inst.k / f) * (phip / phi) * df[i];
    }
  }

  SolitonResidual out{ScalarProfile(grid, std::move(radial), "soliton residual radial"),
                      std::nullopt};
  if (n >= 2) {
    out.tangential = ScalarProfile(grid, std::move(tangential), "soliton residual tangential");
  }
  return out;
}

// ---------------------------------------------------------------------------
// IVP integration (Dormand-Prince 5(4), adaptive, landing on grid nodes)
// ---------------------------------------------------------------------------

namespace {

struct OdeRhs {
  const ModelBase& base;
  const ScalarProfile& rho;
  double theta;
  int k;
  double exponent;

  // v'' = -(A(r)) v' - rho k v + theta k v^(1-2/k), A = (n-1) phi'/phi - h'.
  void operator()(double r, double v, double w, double& dv, double& dw) const {
    const double a = base.angular_coefficient_at(r) - base.drift_coefficient_at(r);
    const double rho_r = fd::interpolate(rho, r);
    dv = w;
    dw = -a * w - rho_r * k * v + theta * k * power_term(v, exponent);
  }
};

struct StepResult {
  double v, w, err;
};

StepResult dp45_step(const OdeRhs& f, double r, double v, double w, double h) {
  double k1v, k1w, k2v, k2w, k3v, k3w, k4v, k4w, k5v, k5w, k6v, k6w, k7v, k7w;
  f(r, v, w, k1v, k1w);
  f(r + h / 5, v + h * (k1v / 5), w + h * (k1w / 5), k2v, k2w);
  f(r + 3 * h / 10, v + h * (3 * k1v / 40 + 9 * k2v / 40), w + h * (3 * k1w / 40 + 9 * k2w / 40),
    k3v, k3w);
  f(r + 4 * h / 5, v + h * (44 * k1v / 45 - 56 * k2v / 15 + 32 * k3v / 9),
    w + h * (44 * k1w / 45 - 56 * k2w / 15 + 32 * k3w / 9), k4v, k4w);
  f(r + 8 * h / 9,
    v + h * (19372 * k1v / 6561 - 25360 * k2v / 2187 + 64448 * k3v / 6561 - 212 * k4v / 729),
    w + h * (19372 * k1w / 6561 - 25360 * k2w / 2187 + 64448 * k3w / 6561 - 212 * k4w / 729),
    k5v, k5w);
  f(r + h,
    v + h * (9017 * k1v / 3168 - 355 * k2v / 33 + 46732 * k3v / 5247 + 49 * k4v / 176 -
             5103 * k5v / 18656),
    w + h * (9017 * k1w / 3168 - 355 * k2w / 33 + 46732 * k3w / 5247 + 49 * k4w / 176 -
             5103 * k5w / 18656),
    k6v, k6w);
  const double v5 = v + h * (35 * k1v / 384 + 500 * k3v / 1113 + 125 * k4v / 192 -
                             2187 * k5v / 6784 + 11 * k6v / 84);
  const double w5 = w + h * (35 * k1w / 384 + 500 * k3w / 1113 + 125 * k4w / 192 -
                             2187 * k5w / 6784 + 11 * k6w / 84);
  f(r + h, v5, w5, k7v, k7w);
  const double ev = h * (71 * k1v / 57600 - 71 * k3v / 16695 + 71 * k4v / 1920 -
                         17253 * k5v / 339200 + 22 * k6v / 525 - k7v / 40);
  const double ew = h * (71 * k1w / 57600 - 71 * k3w / 16695 + 71 * k4w / 1920 -
                         17253 * k5w / 339200 + 22 * k6w / 525 - k7w / 40);
  const double rtol = 1e-11, atol = 1e-13;
  const double err = std::max(std::abs(ev) / (atol + rtol * std::max(std::abs(v), std::abs(v5))),
                              std::abs(ew) / (atol + rtol * std::max(std::abs(w), std::abs(w5))));
  return {v5, w5, err};
}

}  // namespace

IvpTrace integrate_warp_ivp(const ModelBase& base, const ScalarProfile& rho, double theta,
                            int k, double v0, double slope0, double growth_bound) {
  require_same_grid(base.grid(), rho.grid());
  if (!(v0 > 0.0)) throw Error(ErrorCode::non_positive_input, "v0 must be > 0");
  if (k < 1) throw Error(ErrorCode::param_out_of_range, "k must be >= 1");

  const RadialGrid& grid = base.grid();
  const double exponent = 1.0 - 2.0 / static_cast<double>(k);
  OdeRhs rhs{base, rho, theta, k, exponent};

  IvpTrace trace;
  trace.r.reserve(grid.count());
  trace.v.reserve(grid.count());
  trace.dv.reserve(grid.count());

  double r = grid.r_min();
  double v = v0;
  double w = slope0;
  int start_node = 0;

  const bool has_axis = grid.r_min() == 0.0 && base.n() >= 2;
  if (has_axis) {
    // Smooth axis: v'(0) = 0 and v''(0) = (-rho k v0 + theta k v0^e) / n,
    // so take the first step by its Taylor expansion.
    if (slope0 != 0.0) {
      throw Error(ErrorCode::param_out_of_range,
                  "smooth axis (r_min = 0, n >= 2) requires slope0 = 0");
    }
    trace.r.push_back(r);
    trace.v.push_back(v);
    trace.dv.push_back(0.0);
    const double c = (-rho[0] * k * v0 + theta * k * power_term(v0, exponent)) / base.n();
    const double h = grid.spacing();
    r = grid.node(1);
    v = v0 + 0.5 * c * h * h;
    w = c * h;
    start_node = 1;
  }

  double h_try = grid.spacing();
  for (int node = start_node; node < grid.count(); ++node) {
    const double r_target = grid.node(node);
    if (node == start_node && r >= r_target) {
      // starting point already on this node
    } else {
      while (r < r_target - 1e-14 * std::max(1.0, r_target)) {
        double h = std::min(h_try, r_target - r);
        StepResult step = dp45_step(rhs, r, v, w, h);
        int attempts = 0;
        while (step.err > 1.0 && attempts < 60) {
          h *= std::clamp(0.9 * std::pow(step.err, -0.2), 0.1, 0.9);
          step = dp45_step(rhs, r, v, w, h);
          ++attempts;
        }
        const double v_prev = v;
        const double r_prev = r;
        r += h;
        v = step.v;
        w = step.w;
        if (step.err > 0.0) {
          h_try = h * std::clamp(0.9 * std::pow(step.err, -0.2), 0.2, 5.0);
        } else {
          h_try = h * 5.0;
        }
        h_try = std::min(h_try, grid.spacing() * 16.0);
        if (v <= 0.0) {
          trace.status = IvpTrace::Status::positivity_lost;
          trace.crossing_radius = r_prev + v_prev * (r - r_prev) / (v_prev - v);
          return trace;
        }
        if (std::abs(v) > growth_bound || std::abs(w) > growth_bound) {
          trace.status = IvpTrace::Status::growth_unbounded;
          trace.r.push_back(r);
          trace.v.push_back(v);
          trace.dv.push_back(w);
          return trace;
        }
      }
    }
    trace.r.push_back(r_target);
    trace.v.push_back(v);
    trace.dv.push_back(w);
    trace.max_gradient_ratio =
        std::max(trace.max_gradient_ratio, std::abs(w) / (k * std::max(v, 1e-300)));
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Collocation (damped Newton on the grid)
// ---------------------------------------------------------------------------

namespace {

// Dense LU with partial pivoting; solves in place. Desk-scale grids only.
bool lu_solve(std::vector<double>& a, std::vector<double>& b, int n) {
  std::vector<int> piv(n);
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int col = 0; col < n; ++col) {
    int p = col;
    double best = std::abs(a[col * n + col]);
    for (int row = col + 1; row < n; ++row) {
      const double cand = std::abs(a[row * n + col]);
      if (cand > best) {
        best = cand;
        p = row;
      }
    }
    if (best == 0.0) return false;
    if (p != col) {
      for (int j = 0; j < n; ++j) std::swap(a[col * n + j], a[p * n + j]);
      std::swap(b[col], b[p]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (int row = col + 1; row < n; ++row) {
      const double factor = a[row * n + col] * inv;
      if (factor == 0.0) continue;
      a[row * n + col] = 0.0;
      for (int j = col + 1; j < n; ++j) a[row * n + j] -= factor * a[col * n + j];
      b[row] -= factor * b[col];
    }
  }
  for (int row = n - 1; row >= 0; --row) {
    double acc = b[row];
    for (int j = row + 1; j < n; ++j) acc -= a[row * n + j] * b[j];
    b[row] = acc / a[row * n + row];
  }
  return true;
}

struct CollocationSystem {
  const ModelBase& base;
  const ScalarProfile& rho;
  double theta;
  int k;
  double exponent;
  const SolveConfig& config;
  double slope;

  int size() const { return base.grid().count(); }

  double drift_coeff(int i) const {
    return base.angular_coefficient(i) - base.h_prime()[i];
  }

  void residual(const std::vector<double>& v, std::vector<double>& F) const {
    const RadialGrid& grid = base.grid();
    const int n = size();
    const double h = grid.spacing();
    std::vector<double> d1 = fd::derivative(v, h);
    std::vector<double> d2 = fd::second_derivative(v, h);
    F.assign(n, 0.0);
    F[0] = v[0] - config.v0;
    for (int i = 1; i + 1 < n; ++i) {
      F[i] = d2[i] + drift_coeff(i) * d1[i] + rho[i] * k * v[i] -
             theta * k * power_term(v[i], exponent);
    }
    switch (config.boundary) {
      case BoundaryCondition::free_slope:
        F[n - 1] = d1[0] - slope;
        break;
      case BoundaryCondition::neumann:
        F[n - 1] = d1[n - 1] - config.boundary_value;
        break;
      case BoundaryCondition::dirichlet:
        F[n - 1] = v[n - 1] - config.boundary_value;
        break;
    }
  }

  void jacobian(const std::vector<double>& v, std::vector<double>& J) const {
    const RadialGrid& grid = base.grid();
    const int n = size();
    const double h = grid.spacing();
    J.assign(static_cast<size_t>(n) * n, 0.0);
    J[0] = 1.0;
    for (int i = 1; i + 1 < n; ++i) {
      for (const auto& e : fd::second_derivative_stencil(i, n, h)) {
        J[static_cast<size_t>(i) * n + (i + e.offset)] += e.weight;
      }
      const double a = drift_coeff(i);
      for (const auto& e : fd::derivative_stencil(i, n, h)) {
        J[static_cast<size_t>(i) * n + (i + e.offset)] += a * e.weight;
      }
      double diag = rho[i] * k;
      if (theta != 0.0 && exponent != 0.0) {
        diag -= theta * k * exponent * power_term(v[i], exponent - 1.0);
      }
      J[static_cast<size_t>(i) * n + i] += diag;
    }
    const int last = n - 1;
    switch (config.boundary) {
      case BoundaryCondition::free_slope:
        for (const auto& e : fd::derivative_stencil(0, n, h)) {
          J[static_cast<size_t>(last) * n + e.offset] += e.weight;
        }
        break;
      case BoundaryCondition::neumann:
        for (const auto& e : fd::derivative_stencil(last, n, h)) {
          J[static_cast<size_t>(last) * n + (last + e.offset)] += e.weight;
        }
        break;
      case BoundaryCondition::dirichlet:
        J[static_cast<size_t>(last) * n + last] = 1.0;
        break;
    }
  }
};

double max_abs(const std::vector<double>& x) {
  double mx = 0.0;
  for (double v : x) mx = std::max(mx, std::abs(v));
  return mx;
}

std::vector<double> newton_collocation(const CollocationSystem& sys, std::vector<double> v) {
  std::vector<double> F, J, delta;
  sys.residual(v, F);
  double norm = max_abs(F);
  for (int iter = 0; iter < sys.config.max_iter; ++iter) {
    if (norm <= sys.config.tol) return v;
    sys.jacobian(v, J);
    delta = F;
    for (double& d : delta) d = -d;
    std::vector<double> lu = J;
    if (!lu_solve(lu, delta, sys.size())) {
      throw Error(ErrorCode::no_convergence, "collocation Jacobian is singular");
    }
    // Damped update: keep v positive and require residual decrease.
    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving) {
      std::vector<double> trial(v.size());
      bool positive = true;
      for (size_t i = 0; i < v.size(); ++i) {
        trial[i] = v[i] + lambda * delta[i];
        if (!(trial[i] > 0.0)) {
          positive = false;
          break;
        }
      }
      if (positive) {
        std::vector<double> Ft;
        sys.residual(trial, Ft);
        const double trial_norm = max_abs(Ft);
        if (trial_norm < norm || trial_norm <= sys.config.tol) {
          v = std::move(trial);
          F = std::move(Ft);
          norm = trial_norm;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      throw Error(ErrorCode::no_convergence,
                  "damped Newton stalled at residual " + std::to_string(norm));
    }
  }
  if (norm <= sys.config.tol) return v;
  throw Error(ErrorCode::no_convergence,
              "max_iter reached with residual " + std::to_string(norm));
}

}  // namespace

ScalarProfile solve_warp_ode(const ModelBase& base, const ScalarProfile& rho, double theta,
                             int k, const SolveConfig& config) {
  require_same_grid(base.grid(), rho.grid());
  if (!(config.v0 > 0.0)) throw Error(ErrorCode::non_positive_input, "v0 must be > 0");
  if (!(config.tol > 0.0)) throw Error(ErrorCode::param_out_of_range, "tol must be > 0");
  if (config.max_iter < 1) throw Error(ErrorCode::param_out_of_range, "max_iter must be >= 1");
  if (k < 1) throw Error(ErrorCode::param_out_of_range, "k must be >= 1");

  const RadialGrid& grid = base.grid();
  const bool has_axis = grid.r_min() == 0.0 && base.n() >= 2;
  double slope = config.slope0.value_or(0.0);
  if (has_axis && slope != 0.0) {
    throw Error(ErrorCode::param_out_of_range,
                "smooth axis (r_min = 0, n >= 2) enforces v'(0) = 0");
  }

  const double exponent = 1.0 - 2.0 / static_cast<double>(k);
  CollocationSystem sys{base, rho, theta, k, exponent, config, slope};

  std::vector<double> guess;
  if (config.method == SolveMethod::shooting) {
    double s = slope;
    if (config.boundary != BoundaryCondition::free_slope) {
      // Secant iteration on the initial slope to hit the far-end target.
      auto mismatch = [&](double s_try) {
        IvpTrace t = integrate_warp_ivp(base, rho, theta, k, config.v0, s_try);
        if (t.status == IvpTrace::Status::positivity_lost) {
          throw PositivityLost(t.crossing_radius, "candidate crossed zero at r = " +
                                                      std::to_string(t.crossing_radius));
        }
        if (t.status == IvpTrace::Status::growth_unbounded) {
          throw Error(ErrorCode::no_convergence, "candidate grew past the growth guard");
        }
        return (config.boundary == BoundaryCondition::neumann ? t.dv.back() : t.v.back()) -
               config.boundary_value;
      };
      double s0 = s;
      double s1 = s + std::max(0.1, 0.1 * std::abs(s));
      double m0 = mismatch(s0);
      double m1 = mismatch(s1);
      int iter = 0;
      while (std::abs(m1) > config.tol && iter < config.max_iter) {
        if (m1 == m0) break;
        const double s2 = s1 - m1 * (s1 - s0) / (m1 - m0);
        s0 = s1;
        m0 = m1;
        s1 = s2;
        m1 = mismatch(s1);
        ++iter;
      }
      if (std::abs(m1) > std::sqrt(config.tol)) {
        throw Error(ErrorCode::no_convergence, "shooting mismatch did not close");
      }
      s = s1;
      sys.slope = s;
    }
    IvpTrace t = integrate_warp_ivp(base, rho, theta, k, config.v0, s);
    if (t.status == IvpTrace::Status::positivity_lost) {
      throw PositivityLost(t.crossing_radius,
                           "candidate crossed zero at r = " + std::to_string(t.crossing_radius));
    }
    if (t.status == IvpTrace::Status::growth_unbounded) {
      throw Error(ErrorCode::no_convergence,
                  "candidate grew past the growth guard (unbounded growth)");
    }
    guess = t.v;
  } else {
    // Collocation initial guess: geometric ramp toward a Dirichlet target,
    // linear ramp along the initial slope otherwise, floored away from zero.
    guess.resize(grid.count());
    if (config.boundary == BoundaryCondition::dirichlet && config.boundary_value > 0.0) {
      const double ratio = config.boundary_value / config.v0;
      for (int i = 0; i < grid.count(); ++i) {
        const double t = static_cast<double>(i) / (grid.count() - 1);
        guess[i] = config.v0 * std::pow(ratio, t);
      }
    } else {
      for (int i = 0; i < grid.count(); ++i) {
        const double ramp = config.v0 + slope * (grid.node(i) - grid.r_min());
        guess[i] = std::max(ramp, 1e-6 * config.v0);
      }
    }
  }

  // Both methods finish on the discrete system, so the interior residual of
  // the returned profile is below tol by construction.
  std::vector<double> solved = newton_collocation(sys, std::move(guess));
  ScalarProfile v(grid, std::move(solved), "v");
  const double recheck = warp_residual_interior_max(base, v, rho, k, theta);
  if (recheck > config.tol) {
    throw Error(ErrorCode::no_convergence,
                "post-solve residual " + std::to_string(recheck) + " exceeds tol");
  }
  return v;
}

}  // namespace warpest
