#include "warpest/nonexist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "warpest/bounds.hpp"

namespace warpest {

const char* to_string(RhoKind kind) {
  switch (kind) {
    case RhoKind::zero: return "zero";
    case RhoKind::positive_constant: return "positive-constant";
    case RhoKind::other: return "other";
  }
  return "?";
}

RhoKind rho_kind_from_string(const std::string& name) {
  if (name == "zero") return RhoKind::zero;
  if (name == "positive-constant") return RhoKind::positive_constant;
  if (name == "other") return RhoKind::other;
  throw Error(ErrorCode::param_out_of_range, "unknown rho kind '" + name + "'");
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::nonexistent: return "nonexistent";
    case Outcome::forced_constant: return "forced-constant";
    case Outcome::no_obstruction: return "no-obstruction";
  }
  return "?";
}

namespace {

void validate_scenario(const Scenario& s) {
  if (s.k < 1) throw Error(ErrorCode::param_out_of_range, "scenario k must be >= 1");
  if (s.n < 1) throw Error(ErrorCode::param_out_of_range, "scenario n must be >= 1");
  if (!(s.m > 0.0)) throw Error(ErrorCode::param_out_of_range, "scenario m must be > 0");
  if (s.K < 0.0) throw Error(ErrorCode::param_out_of_range, "scenario K must be >= 0");
  if (s.gamma < 0.0) throw Error(ErrorCode::param_out_of_range, "scenario gamma must be >= 0");
  if (s.rho_kind == RhoKind::positive_constant && !(s.rho_value > 0.0)) {
    throw Error(ErrorCode::param_out_of_range,
                "positive-constant scenario needs rho_value > 0");
  }
  if (s.rho_kind == RhoKind::zero && s.rho_value != 0.0) {
    throw Error(ErrorCode::param_out_of_range, "zero-rho scenario needs rho_value = 0");
  }
}

EstimateParams scenario_params(const Scenario& s) {
  EstimateParams p;
  p.n = s.n;
  p.m = s.m;
  p.k = s.k;
  p.beta = 0.5 * (EstimateParams::beta_window_low(s.k) + 1.0);
  p.eps = 0.5;
  p.K = s.K;
  p.gamma = s.gamma;
  p.R = EstimateParams::infinite_radius();
  p.theta = s.theta;
  p.M = s.theta > 0.0 ? std::optional<double>(1.0) : std::nullopt;
  return p;
}

}  // namespace

Verdict nonexistence_probe(const Scenario& s) {
  validate_scenario(s);
  Verdict verdict;

  // The decisive quantity: global rhs reproduced from compute_constants.
  EstimateParams params = scenario_params(s);
  ConstantsBundle constants = compute_constants(params);
  const double rhs = estimate_rhs(params, constants);
  verdict.global_rhs = rhs;

  const bool flat_hypotheses = s.K == 0.0 && s.gamma == 0.0;
  std::ostringstream cert;

  if (flat_hypotheses && s.rho_kind == RhoKind::zero && s.theta < 0.0) {
    verdict.outcome = Outcome::nonexistent;
    verdict.lhs_floor = -s.theta / s.k;  // coefficient of f^-2 in the lhs
    cert << "K = 0 and gamma = 0 give Q = " << constants.Q << " and global rhs = " << rhs
         << "; with rho = 0 the lhs is beta |grad f|^2/f^2 - theta/(k f^2) >= "
         << verdict.lhs_floor << " * f^-2 > 0 at every point, contradicting lhs <= rhs.";
  } else if (flat_hypotheses && s.rho_kind == RhoKind::positive_constant && s.theta == 0.0) {
    verdict.outcome = Outcome::nonexistent;
    verdict.lhs_floor = s.rho_value / s.k;
    cert << "K = 0 and gamma = 0 give Q = " << constants.Q << " and global rhs = " << rhs
         << "; with rho = " << s.rho_value
         << " > 0 and theta = 0 the lhs is at least rho/k = " << verdict.lhs_floor
         << " > 0, contradicting lhs <= rhs.";
  } else if (flat_hypotheses && s.rho_kind == RhoKind::zero && s.theta == 0.0) {
    verdict.outcome = Outcome::forced_constant;
    verdict.lhs_floor = 0.0;
    cert << "K = 0, gamma = 0, rho = 0, theta = 0: the global bound reads beta "
            "|grad f|^2/f^2 <= "
         << rhs << " = 0 for every admissible beta, so f must be constant.";
  } else {
    verdict.outcome = Outcome::no_obstruction;
    cert << "probe certifies nothing: the global rhs " << rhs
         << " does not force a sign contradiction for this scenario.";
  }
  verdict.certificate = cert.str();
  return verdict;
}

SphereProductReport example_sphere_product(int n, int sample_count) {
  if (n < 2) {
    // For n = 1 the sphere factor is Ricci-flat and (n-1) - s/(3-s) goes
    // negative for s > 0, so the displayed inequality fails.
    throw Error(ErrorCode::param_out_of_range, "sphere-product check needs n >= 2");
  }
  if (sample_count < 100) {
    throw Error(ErrorCode::param_out_of_range, "need at least 100 samples");
  }

  SphereProductReport report;
  report.n = n;
  report.samples = sample_count;
  report.euclidean_eigenvalue = 0.0;  // h is independent of the flat factor
  report.min_eigenvalue = std::numeric_limits<double>::infinity();

  std::vector<double> T(static_cast<size_t>(n) * n);
  for (int i = 0; i < sample_count; ++i) {
    const double s = -1.0 + 2.0 * static_cast<double>(i) / (sample_count - 1);
    // Adapted orthonormal frame on the sphere factor with e_0 along grad s:
    //   Ric            = (n-1) I
    //   Hess h         = (1-s^2)/(3-s)^2 E00 - s/(3-s) I   (Hess s = -s g)
    //   dh x dh        = (1-s^2)/(3-s)^2 E00
    // so the ds x ds contributions cancel exactly.
    const double ds_sq = (1.0 - s * s) / ((3.0 - s) * (3.0 - s));
    const double iso = -s / (3.0 - s);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        double hess = (a == b) ? iso : 0.0;
        if (a == 0 && b == 0) hess += ds_sq;
        double outer = (a == 0 && b == 0) ? ds_sq : 0.0;
        T[static_cast<size_t>(a) * n + b] = ((a == b) ? (n - 1.0) : 0.0) + hess - outer;
      }
    }
    double diag_min = std::numeric_limits<double>::infinity();
    double diag_max = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a) {
      const double d = T[static_cast<size_t>(a) * n + a];
      diag_min = std::min(diag_min, d);
      diag_max = std::max(diag_max, d);
      for (int b = 0; b < n; ++b) {
        if (a != b) {
          report.max_offdiagonal =
              std::max(report.max_offdiagonal, std::abs(T[static_cast<size_t>(a) * n + b]));
        }
      }
    }
    report.max_anisotropy = std::max(report.max_anisotropy, diag_max - diag_min);
    if (diag_min < report.min_eigenvalue) {
      report.min_eigenvalue = diag_min;
      report.argmin_s = s;
    }
  }
  return report;
}

BlowupWitness numeric_blowup_witness(const Scenario& s, double domain_length) {
  Verdict verdict = nonexistence_probe(s);
  if (verdict.outcome != Outcome::nonexistent) {
    throw Error(ErrorCode::param_out_of_range,
                "witness requires a scenario the probe certifies as nonexistent (got " +
                    std::string(to_string(verdict.outcome)) + ")");
  }
  if (!(domain_length > 0.0)) {
    throw Error(ErrorCode::param_out_of_range, "domain_length must be > 0");
  }

  // Flat weighted line: K = 0 and gamma = 0 hold exactly.
  int count = static_cast<int>(std::lround(domain_length / 0.01)) + 1;
  if (count % 2 == 0) ++count;
  count = std::max(count, 101);
  ModelBase base = build_radial_base(BaseKind::line_segment, 1, 0.0, domain_length, count,
                                     0.0, s.m);
  ScalarProfile rho = ScalarProfile::constant(base.grid(), s.rho_value, "rho");

  BlowupWitness witness{s, integrate_warp_ivp(base, rho, s.theta, s.k, 1.0, 0.0, 1e9), ""};
  std::ostringstream summary;
  switch (witness.trace.status) {
    case IvpTrace::Status::positivity_lost:
      summary << "positivity lost at r = " << witness.trace.crossing_radius
              << "; |grad f|/f reached " << witness.trace.max_gradient_ratio
              << " before the crossing";
      break;
    case IvpTrace::Status::growth_unbounded:
      summary << "growth unbounded: |v| passed the guard near r = "
              << (witness.trace.r.empty() ? 0.0 : witness.trace.r.back())
              << "; |grad f|/f reached " << witness.trace.max_gradient_ratio;
      break;
    case IvpTrace::Status::completed:
      summary << "integration completed on [0, " << domain_length
              << "] with |grad f|/f reaching " << witness.trace.max_gradient_ratio;
      break;
  }
  witness.summary = summary.str();
  return witness;
}

}  // namespace warpest
