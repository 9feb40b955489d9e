#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "warpest/bounds.hpp"
#include "warpest/nonexist.hpp"

using namespace warpest;
using namespace warpest::testing;

namespace {

Scenario make_scenario(RhoKind kind, double rho_value, double theta, double K = 0.0,
                       double gamma = 0.0) {
  Scenario s;
  s.rho_kind = kind;
  s.rho_value = rho_value;
  s.theta = theta;
  s.K = K;
  s.gamma = gamma;
  s.k = 2;
  s.n = 1;
  s.m = 1.0;
  return s;
}

}  // namespace

TEST_CASE("nonexistence probe sign logic") {
  Verdict shrink = nonexistence_probe(make_scenario(RhoKind::zero, 0.0, -1.0));
  CHECK(shrink.outcome == Outcome::nonexistent);
  CHECK(shrink.global_rhs == 0.0);
  CHECK(shrink.lhs_floor == doctest::Approx(0.5));
  CHECK_FALSE(shrink.certificate.empty());

  Verdict steady = nonexistence_probe(make_scenario(RhoKind::positive_constant, 1.0, 0.0));
  CHECK(steady.outcome == Outcome::nonexistent);
  CHECK(steady.global_rhs == 0.0);
  CHECK(steady.lhs_floor == doctest::Approx(0.5));

  // rho = -k is realized by the warped-line decomposition: no obstruction.
  Verdict hyperbolic = nonexistence_probe(make_scenario(RhoKind::other, -2.0, 0.0));
  CHECK(hyperbolic.outcome == Outcome::no_obstruction);

  // rho = 0, theta = 0 with flat hypotheses forces a constant warp.
  Verdict trivial = nonexistence_probe(make_scenario(RhoKind::zero, 0.0, 0.0));
  CHECK(trivial.outcome == Outcome::forced_constant);

  // Curvature slack disarms the probe.
  Verdict slack = nonexistence_probe(make_scenario(RhoKind::zero, 0.0, -1.0, 0.5));
  CHECK(slack.outcome == Outcome::no_obstruction);
  Verdict wobble = nonexistence_probe(make_scenario(RhoKind::zero, 0.0, -1.0, 0.0, 0.3));
  CHECK(wobble.outcome == Outcome::no_obstruction);

  CHECK_THROWS_AS(nonexistence_probe(make_scenario(RhoKind::positive_constant, -1.0, 0.0)),
                  Error);
}

TEST_CASE("sphere-product curvature reduction") {
  for (int n = 2; n <= 6; ++n) {
    SphereProductReport report = example_sphere_product(n, 201);
    // Analytic minimum: s/(3-s) is increasing, so the bottom sits at s = 1.
    CHECK(std::abs(report.min_eigenvalue - (n - 1.5)) < 1e-9);
    CHECK(report.argmin_s == doctest::Approx(1.0));
    CHECK(report.euclidean_eigenvalue == 0.0);
    CHECK(report.max_anisotropy < 1e-12);
    CHECK(report.max_offdiagonal < 1e-12);
  }

  // s = 0 kills the correction term: eigenvalue n - 1 = 4 for n = 5.
  SphereProductReport odd = example_sphere_product(5, 201);
  CHECK(odd.min_eigenvalue < 4.0);  // the minimum is elsewhere
  // Direct sample via a 3-point run on [-eps, 0, eps] is overkill; the n=5
  // claim is the value of the isotropic eigenvalue at s = 0:
  const double at_zero = (5 - 1.0) - 0.0 / (3.0 - 0.0);
  CHECK(at_zero == doctest::Approx(4.0));

  CHECK_THROWS_AS(example_sphere_product(1, 201), Error);
  CHECK_THROWS_AS(example_sphere_product(3, 50), Error);
}

TEST_CASE("numeric blowup witness") {
  // theta < 0, rho = 0, k = 2: closed form v = 1 - r^2, so positivity dies
  // at exactly r = 1 and |grad f|/f blows up on approach.
  Scenario crash = make_scenario(RhoKind::zero, 0.0, -1.0);
  BlowupWitness w1 = numeric_blowup_witness(crash, 10.0);
  CHECK(w1.trace.status == IvpTrace::Status::positivity_lost);
  CHECK(w1.trace.crossing_radius == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(w1.trace.max_gradient_ratio > 5.0);
  CHECK(w1.summary.find("positivity lost") != std::string::npos);

  // rho > 0, theta = 0: v = cos(sqrt(rho k) r) crosses at pi / (2 sqrt(2)).
  Scenario osc = make_scenario(RhoKind::positive_constant, 1.0, 0.0);
  BlowupWitness w2 = numeric_blowup_witness(osc, 10.0);
  CHECK(w2.trace.status == IvpTrace::Status::positivity_lost);
  const double oracle = 3.14159265358979323846 / (2.0 * std::sqrt(2.0));
  CHECK(w2.trace.crossing_radius == doctest::Approx(oracle).epsilon(1e-3));

  // The witness refuses scenarios the probe does not certify.
  Scenario fine = make_scenario(RhoKind::other, -2.0, 0.0);
  CHECK_THROWS_AS(numeric_blowup_witness(fine, 10.0), Error);
}

TEST_CASE("probe verdicts agree with the global estimate") {
  // nonexistent scenario => the global bound fails for every trial f.
  std::mt19937 rng(2718u);
  ModelBase seg = line_base(0.0, 2.0, 201);
  for (const Scenario& s : {make_scenario(RhoKind::zero, 0.0, -1.0),
                            make_scenario(RhoKind::positive_constant, 1.0, 0.0)}) {
    REQUIRE(nonexistence_probe(s).outcome == Outcome::nonexistent);
    for (int trial = 0; trial < 3; ++trial) {
      ScalarProfile f = random_smooth_positive(seg.grid(), rng);
      SolitonInstance inst(seg, f, ScalarProfile::constant(seg.grid(), s.rho_value, "rho"),
                           s.k, s.theta);
      for (double beta : {0.2, 0.5, 0.8}) {
        EstimateParams p;
        p.beta = beta;
        p.eps = 0.5;
        p.K = 0.0;
        p.gamma = 0.0;
        BoundReport report = global_estimate(inst, p);
        CHECK_FALSE(report.pass);
        CHECK(report.margin_min < 0.0);
      }
    }
  }
}
