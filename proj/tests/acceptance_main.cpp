// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Tolerances are pinned here, in code; nothing defers to later calibration.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "helpers.hpp"
#include "warpest/bounds.hpp"
#include "warpest/nonexist.hpp"
#include "warpest/proofcheck.hpp"

using namespace warpest;
using namespace warpest::testing;

namespace {

class Harness {
 public:
  void criterion(int number, const std::string& title,
                 const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures_;
  }

  int finish() const {
    std::printf("%s: %d criterion(s) failed\n", failures_ == 0 ? "OK" : "FAILED", failures_);
    return failures_ == 0 ? 0 : 1;
  }

 private:
  int failures_ = 0;
};

bool check(bool cond, std::string& detail, const std::string& msg) {
  if (!cond && detail.empty()) detail = msg;
  return cond;
}

}  // namespace

int main() {
  Harness harness;

  // 1. Closed-form solution recovery at spacing 1e-2 on [0, 3].
  harness.criterion(1, "solver reproduces v = e^{kr} (rel err < 1e-6, residual < 1e-8)",
                    [](std::string& detail) {
    ModelBase seg = line_base(0.0, 3.0, 301);
    ScalarProfile rho = ScalarProfile::constant(seg.grid(), -2.0, "rho");
    SolveConfig config;
    config.v0 = 1.0;
    config.slope0 = 2.0;
    config.method = SolveMethod::shooting;
    ScalarProfile v = solve_warp_ode(seg, rho, 0.0, 2, config);
    double rel_err = 0.0;
    for (int i = 0; i < v.size(); ++i) {
      const double want = std::exp(2.0 * seg.grid().node(i));
      rel_err = std::max(rel_err, std::abs(v[i] - want) / want);
    }
    const double residual = warp_residual_interior_max(seg, v, rho, 2, 0.0);
    bool ok = check(rel_err < 1e-6, detail, "rel err " + std::to_string(rel_err));
    ok &= check(residual < 1e-8, detail, "residual " + std::to_string(residual));
    return ok;
  });

  // 2. Fiber-constant profiles are constant on the closed-form pair.
  harness.criterion(2, "theta profiles constant (sin: sd < 1e-6 at k-1; exp: |theta| < 1e-8)",
                    [](std::string& detail) {
    SolitonInstance sph = spherical_decomposition(2);
    ScalarProfile th = theta_profile(sph);
    double mean = 0.0;
    for (int i = 0; i < th.size(); ++i) mean += th[i];
    mean /= th.size();
    double var = 0.0;
    for (int i = 0; i < th.size(); ++i) var += (th[i] - mean) * (th[i] - mean);
    const double sd = std::sqrt(var / th.size());
    bool ok = check(sd < 1e-6, detail, "sin sd " + std::to_string(sd));
    ok &= check(std::abs(mean - 1.0) < 1e-6, detail, "sin mean " + std::to_string(mean));

    SolitonInstance hyp = hyperbolic_decomposition(2, 1.0, 201);
    ScalarProfile th2 = theta_profile(hyp);
    double max_abs = 0.0;
    for (int i = 0; i < th2.size(); ++i) max_abs = std::max(max_abs, std::abs(th2[i]));
    ok &= check(max_abs < 1e-8, detail, "exp max " + std::to_string(max_abs));
    return ok;
  });

  // 3. Constants arithmetic against hand-derived rationals.
  harness.criterion(3, "constants: P = 38, Q = (3/4) 128^(1/3), S = 8, exact zeros",
                    [](std::string& detail) {
    EstimateParams p;
    p.n = 2; p.m = 1.0; p.k = 2; p.beta = 0.5; p.eps = 0.5;
    p.K = 0.0; p.gamma = 0.0; p.c1 = 2.0; p.c2 = 16.0; p.R = 1.0; p.theta = 0.0;
    ConstantsBundle c = compute_constants(p);
    bool ok = check(std::abs(c.P - 38.0) <= 38.0 * 1e-12, detail, "P");
    ok &= check(c.Q == 0.0, detail, "Q not exactly 0");
    ok &= check(c.S == 0.0, detail, "S not exactly 0");

    EstimateParams q = p;
    q.m = 2.0; q.gamma = 1.0;
    const double q_expect = 3.7797631496846195;  // (3/4) * 2^(7/3)
    ok &= check(std::abs(compute_constants(q).Q - q_expect) <= q_expect * 1e-12, detail, "Q");

    EstimateParams s = p;
    s.m = 2.0; s.theta = 1.0; s.M = 1.0;
    ok &= check(std::abs(compute_constants(s).S - 8.0) <= 8.0 * 1e-12, detail, "S");
    return ok;
  });

  // 4. The estimates hold on the warped-line solution with flat hypotheses.
  harness.criterion(4, "estimates on e^r instance: global passes on 9 betas, local at R=1,2",
                    [](std::string& detail) {
    SolitonInstance hyp = hyperbolic_decomposition(2, 3.0, 301);
    // The criterion fixes K = 0, gamma = 0; the certified values must agree.
    const double K_cert =
        bakry_emery_lower_bound(hyp.base, 0.0, 3.0);
    const double gamma_cert = gamma_from_profile(hyp.rho, 0.0, 3.0);
    bool ok = check(K_cert == 0.0, detail, "certified K " + std::to_string(K_cert));
    ok &= check(gamma_cert <= 1e-12, detail, "certified gamma");

    for (double beta : linspace(0.1, 0.9, 9)) {
      EstimateParams p;
      p.beta = beta; p.eps = 0.5; p.K = 0.0; p.gamma = 0.0;
      BoundReport g = global_estimate(hyp, p);
      ok &= check(g.pass, detail, "global fails at beta " + std::to_string(beta));
      ok &= check(g.rhs == 0.0, detail, "global rhs nonzero");
      for (int i = 0; i < g.lhs.size(); ++i) {
        if (std::abs(g.lhs[i] - (beta - 1.0)) >= 1e-6) {
          ok = check(false, detail, "lhs deviates from beta-1");
          break;
        }
      }
    }
    for (double R : {1.0, 2.0}) {
      EstimateParams p;
      p.beta = 0.5; p.eps = 0.5; p.K = 0.0; p.gamma = 0.0;
      p.c1 = 2.0; p.c2 = 16.0; p.R = R;
      BoundReport l = local_estimate(hyp, p);
      ok &= check(l.pass && l.margin_min > 0.0, detail,
                  "local fails at R " + std::to_string(R));
    }
    return ok;
  });

  // 5. Proof-chain margins: cutoff, Bochner battery, Harnack quantity.
  harness.criterion(5, "cutoff/Bochner margins >= -1e-6, Harnack margins >= -1e-5",
                    [](std::string& detail) {
    bool ok = true;
    ModelBase cone = build_radial_base(BaseKind::euclidean_cone, 2, 0.01, 2.41, 241, 0.0, 2.0);
    ModelBase hyp = build_radial_base(BaseKind::hyperbolic, 2, 0.01, 2.41, 241, 0.0, 2.0);
    for (CutoffFamily family : {CutoffFamily::quartic_poly, CutoffFamily::cos4}) {
      CutoffSpec spec = build_cutoff(family);
      for (const ModelBase* base : {&cone, &hyp}) {
        const double K =
            bakry_emery_lower_bound(*base, base->grid().r_min(), base->grid().r_max());
        CutoffMarginReport r = cutoff_gradient_check(spec, *base, K, 1.0);
        ok &= check(r.slope_margin_min >= -1e-6, detail,
                    std::string("slope margin ") + to_string(family));
        ok &= check(r.laplacian_margin_min >= -1e-6, detail,
                    std::string("laplacian margin ") + to_string(family));
      }
    }

    const std::vector<double> radii = linspace(0.6, 2.4, 50);
    ModelBase cone_b = build_radial_base(BaseKind::euclidean_cone, 2, 0.5, 2.5, 201, 0.0, 2.0);
    ModelBase hyp_b = build_radial_base(BaseKind::hyperbolic, 2, 0.5, 2.5, 201, 0.0, 2.0);
    const std::vector<std::function<double(double)>> battery = {
        [](double r) { return r; },           [](double r) { return r * r; },
        [](double r) { return r * r * r; },   [](double r) { return std::sin(r); },
        [](double r) { return std::exp(r); }, [](double) { return 2.5; }};
    for (const ModelBase* base : {&cone_b, &hyp_b}) {
      const double K =
          bakry_emery_lower_bound(*base, base->grid().r_min(), base->grid().r_max());
      for (const auto& fn : battery) {
        ScalarProfile u = ScalarProfile::sample(base->grid(), fn);
        for (const auto& s : bochner_check(*base, u, K, radii)) {
          ok &= check(s.margin >= -1e-6, detail, "Bochner margin " + std::to_string(s.margin));
        }
      }
    }

    SolitonInstance hyp_inst = hyperbolic_decomposition(2, 3.0, 301);
    SolitonInstance sph_inst = spherical_decomposition(2);
    const std::vector<double> inner = linspace(0.5, 2.5, 25);
    for (double beta : linspace(0.1, 0.9, 9)) {
      for (const SolitonInstance* inst : {&hyp_inst, &sph_inst}) {
        for (const auto& s : harnack_laplacian_check(*inst, beta, 0.0, inner)) {
          ok &= check(s.margin >= -1e-5, detail, "Harnack margin " + std::to_string(s.margin));
        }
      }
    }
    return ok;
  });

  // 6. Distance-Laplacian comparison at 50 radii.
  harness.criterion(6, "comparison margins >= -1e-6; exact equality on the flat cone",
                    [](std::string& detail) {
    bool ok = true;
    ModelBase cone = build_radial_base(BaseKind::euclidean_cone, 3, 0.05, 2.55, 251, 0.0, 1.0);
    for (const auto& s : qian_comparison_check(cone, 0.0, linspace(0.2, 2.4, 50))) {
      ok &= check(s.margin_sq >= -1e-6, detail, "flat margin");
      ok &= check(std::abs(s.margin_sq) < 1e-8, detail,
                  "flat equality " + std::to_string(s.margin_sq));
    }
    ModelBase hyp = build_radial_base(BaseKind::hyperbolic, 2, 0.05, 2.55, 251, 0.0, 1.0);
    for (const auto& s : qian_comparison_check(hyp, 1.0, linspace(0.2, 2.4, 50))) {
      ok &= check(s.margin_sq >= -1e-6, detail, "curved margin");
      ok &= check(s.margin_dist >= -1e-6, detail, "curved linear-form margin");
    }
    return ok;
  });

  // 7. Quadratic-root lemma, randomized.
  harness.criterion(7, "root bound >= exact positive root on 1000 random triples",
                    [](std::string& detail) {
    std::mt19937 rng(987654321u);
    std::uniform_real_distribution<double> dist(1e-12, 10.0);
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
      const double a = dist(rng), b = dist(rng), c = dist(rng);
      const double bound = quadratic_root_bound(a, b, c);
      const double root = (b + std::sqrt(b * b + 4.0 * a * c)) / (2.0 * a);
      if (bound < root) ++violations;
    }
    return check(violations == 0, detail, std::to_string(violations) + " violations");
  });

  // 8. Nonexistence logic plus numeric corroboration.
  harness.criterion(8, "probe verdicts and blowup witnesses for the certified scenarios",
                    [](std::string& detail) {
    Scenario shrink;
    shrink.rho_kind = RhoKind::zero;
    shrink.theta = -1.0;
    shrink.k = 2;
    Scenario steady;
    steady.rho_kind = RhoKind::positive_constant;
    steady.rho_value = 1.0;
    steady.theta = 0.0;
    steady.k = 2;
    Scenario fine;
    fine.rho_kind = RhoKind::other;
    fine.rho_value = -2.0;
    fine.theta = 0.0;
    fine.k = 2;

    bool ok = check(nonexistence_probe(shrink).outcome == Outcome::nonexistent, detail,
                    "zero/theta<0 probe");
    ok &= check(nonexistence_probe(steady).outcome == Outcome::nonexistent, detail,
                "positive/theta=0 probe");
    ok &= check(nonexistence_probe(fine).outcome == Outcome::no_obstruction, detail,
                "rho=-k probe");
    for (const Scenario* s : {&shrink, &steady}) {
      BlowupWitness w = numeric_blowup_witness(*s, 10.0);
      ok &= check(w.trace.status == IvpTrace::Status::positivity_lost ||
                      w.trace.status == IvpTrace::Status::growth_unbounded,
                  detail, "witness did not corroborate");
    }
    return ok;
  });

  // 9. Sphere x euclidean product reduction.
  harness.criterion(9, "product-base minimum eigenvalue n - 3/2, exact tensor cancellation",
                    [](std::string& detail) {
    bool ok = true;
    for (int n = 2; n <= 6; ++n) {
      SphereProductReport r = example_sphere_product(n, 201);
      ok &= check(std::abs(r.min_eigenvalue - (n - 1.5)) < 1e-9, detail,
                  "min eigenvalue at n " + std::to_string(n));
      ok &= check(r.max_anisotropy < 1e-12, detail, "anisotropy");
      ok &= check(r.max_offdiagonal < 1e-12, detail, "off-diagonal");
    }
    return ok;
  });

  // 10. Determinism of reports and transform round trips.
  harness.criterion(10, "identical report hashes across runs; f/v/u round trips < 1e-12",
                     [](std::string& detail) {
    cli::RunConfig config =
        cli::load_config(std::string(WARPEST_CONFIG_DIR) + "/verify_hyperbolic.toml");
    cli::RunReport a = cli::cmd_verify(config, 7);
    cli::RunReport b = cli::cmd_verify(config, 7);
    bool ok = check(a.doc["meta"]["report_hash"] == b.doc["meta"]["report_hash"], detail,
                    "hash differs");
    a.doc["meta"].erase("wall_time_ms");
    b.doc["meta"].erase("wall_time_ms");
    ok &= check(a.doc == b.doc, detail, "documents differ");

    std::mt19937 rng(1357u);
    RadialGrid grid(0.0, 2.0, 201);
    for (int trial = 0; trial < 10; ++trial) {
      ScalarProfile f = random_positive_profile(grid, rng);
      ScalarProfile back = v_to_f(f_to_v(f, 3), 3);
      ScalarProfile expu = v_to_u(f_to_v(f, 3)).map([](double x) { return std::exp(x); });
      ScalarProfile v = f_to_v(f, 3);
      for (int i = 0; i < f.size(); ++i) {
        ok &= check(std::abs(back[i] - f[i]) <= 1e-12 * std::abs(f[i]), detail, "f round trip");
        ok &= check(std::abs(expu[i] - v[i]) <= 1e-12 * std::abs(v[i]), detail, "u round trip");
      }
    }
    return ok;
  });

  return harness.finish();
}
