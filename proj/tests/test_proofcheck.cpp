#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "warpest/proofcheck.hpp"

using namespace warpest;
using namespace warpest::testing;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("cutoff certification matches the analytic maxima") {
  // cos4: xi'/sqrt(xi) = -pi sin(pi s), xi'' bottoms out at -pi^2.
  CutoffSpec cos4 = build_cutoff(CutoffFamily::cos4);
  CHECK(cos4.c1 >= kPi);
  CHECK(cos4.c1 <= kPi * 1.011);
  CHECK(cos4.c2 >= kPi * kPi);
  CHECK(cos4.c2 <= kPi * kPi * 1.011);

  // quartic: xi'/sqrt(xi) = -4s, xi'' = -4 + 12 s^2.
  CutoffSpec quartic = build_cutoff(CutoffFamily::quartic_poly);
  CHECK(quartic.c1 >= 4.0 * 0.9995);
  CHECK(quartic.c1 <= 4.0 * 1.011);
  CHECK(quartic.c2 >= 4.0 * 0.9995);
  CHECK(quartic.c2 <= 4.0 * 1.011);
  CHECK(quartic.curvature_joints_excluded);

  CutoffSpec bump = build_cutoff(CutoffFamily::smooth_bump);
  CHECK(bump.c1 > 0.0);
  CHECK(bump.c2 > 0.0);

  for (CutoffFamily family :
       {CutoffFamily::quartic_poly, CutoffFamily::cos4, CutoffFamily::smooth_bump}) {
    CHECK(cutoff_value(family, 1.0) == 1.0);
    CHECK(cutoff_value(family, 2.0) == 0.0);
    CHECK(cutoff_value(family, 0.3) == 1.0);
    CHECK(cutoff_value(family, 2.7) == 0.0);
  }
}

TEST_CASE("certified constants hold at fresh random samples") {
  std::mt19937 rng(4242u);
  std::uniform_real_distribution<double> inside(1.0 + 1e-9, 2.0 - 1e-9);
  for (CutoffFamily family :
       {CutoffFamily::quartic_poly, CutoffFamily::cos4, CutoffFamily::smooth_bump}) {
    CutoffSpec spec = build_cutoff(family);
    for (int i = 0; i < 10000; ++i) {
      const double t = inside(rng);
      const double xi = cutoff_value(family, t);
      CHECK(xi >= 0.0);
      CHECK(xi <= 1.0);
      if (xi > 0.0) {
        const double ratio = cutoff_slope(family, t) / std::sqrt(xi);
        CHECK(ratio <= 1e-12);
        CHECK(ratio >= -spec.c1);
      }
      CHECK(cutoff_curvature(family, t) >= -spec.c2);
    }
  }
}

TEST_CASE("cutoff inequalities hold on flat and hyperbolic bases") {
  for (CutoffFamily family : {CutoffFamily::quartic_poly, CutoffFamily::cos4}) {
    CutoffSpec spec = build_cutoff(family);

    ModelBase cone = build_radial_base(BaseKind::euclidean_cone, 2, 0.01, 2.41, 241, 0.0, 1.0);
    CutoffMarginReport flat = cutoff_gradient_check(spec, cone, 0.0, 1.0);
    CHECK(flat.slope_margin_min >= -1e-6);
    CHECK(flat.laplacian_margin_min >= -1e-6);

    ModelBase hyp = build_radial_base(BaseKind::hyperbolic, 2, 0.01, 2.41, 241, 0.0, 1.0);
    CutoffMarginReport curved = cutoff_gradient_check(spec, hyp, 1.0, 1.0);
    CHECK(curved.slope_margin_min >= -1e-6);
    CHECK(curved.laplacian_margin_min >= -1e-6);

    // Plateau: gradient vanishes, so the slope margin is the full bound.
    const auto& inner = flat.samples[10];
    CHECK(inner.psi == 1.0);
    CHECK(inner.slope_margin ==
          doctest::Approx(spec.c1 * spec.c1).epsilon(1e-9));
  }
}

TEST_CASE("weighted Bochner margins") {
  // Hand calculus: u = r^2 flat n=2, m=2: lhs = 8, rhs = 16/4 = 4, margin 4.
  ModelBase cone = build_radial_base(BaseKind::euclidean_cone, 2, 0.5, 2.5, 201, 0.0, 2.0);
  ScalarProfile usq = ScalarProfile::sample(cone.grid(), [](double r) { return r * r; });
  for (const auto& s : bochner_check(cone, usq, 0.0, linspace(0.7, 2.3, 9))) {
    CHECK(s.margin == doctest::Approx(4.0).epsilon(1e-8));
  }

  ScalarProfile c = ScalarProfile::constant(cone.grid(), 3.0);
  for (const auto& s : bochner_check(cone, c, 0.0, {1.0, 2.0})) {
    CHECK(std::abs(s.margin) < 1e-12);
  }

  // Linear function on the line: every term vanishes, equality case
  // (stacked FD leaves ~1e-9 of rounding noise).
  ModelBase seg = line_base(0.0, 3.0, 301, 2.0);
  ScalarProfile lin = ScalarProfile::sample(seg.grid(), [](double r) { return 2.0 * r; });
  for (const auto& s : bochner_check(seg, lin, 0.0, {0.5, 1.5, 2.5})) {
    CHECK(std::abs(s.margin) < 1e-8);
  }
}

TEST_CASE("Bochner battery stays nonnegative with certified K") {
  const auto radii = linspace(0.6, 2.4, 50);
  std::vector<std::function<double(double)>> battery = {
      [](double r) { return r; },           [](double r) { return r * r; },
      [](double r) { return r * r * r; },   [](double r) { return std::sin(r); },
      [](double r) { return std::exp(r); }, [](double) { return 2.5; }};

  ModelBase cone = build_radial_base(BaseKind::euclidean_cone, 2, 0.5, 2.5, 201, 0.0, 2.0);
  ModelBase hyp = build_radial_base(BaseKind::hyperbolic, 2, 0.5, 2.5, 201, 0.0, 2.0);
  for (const ModelBase* base : {&cone, &hyp}) {
    const double K =
        bakry_emery_lower_bound(*base, base->grid().r_min(), base->grid().r_max());
    for (const auto& fn : battery) {
      ScalarProfile u = ScalarProfile::sample(base->grid(), fn);
      for (const auto& s : bochner_check(*base, u, K, radii)) {
        CHECK(s.margin >= -1e-6);
      }
    }
  }
}

TEST_CASE("Harnack-quantity Laplacian inequality along solutions") {
  // Warped-line decomposition: L = (beta-1)k^2 is constant and every term
  // in the inequality vanishes.
  SolitonInstance hyp = hyperbolic_decomposition(2, 3.0, 301);
  for (const auto& s : harnack_laplacian_check(hyp, 0.5, 0.0, linspace(0.3, 2.7, 25))) {
    CHECK(std::abs(s.margin) < 1e-6);
  }
  ScalarProfile L = harnack_quantity(hyp, 0.5);
  for (int i = 0; i < L.size(); ++i) {
    CHECK(L[i] == doctest::Approx((0.5 - 1.0) * 4.0).epsilon(1e-6));
  }

  // Constant instance: L = 0 and the margin is exactly zero.
  ModelBase seg = line_base(0.0, 2.0, 201);
  SolitonInstance cst(seg, ScalarProfile::constant(seg.grid(), 1.0, "f"),
                      ScalarProfile::constant(seg.grid(), 0.3, "rho"), 2, 0.3);
  for (const auto& s : harnack_laplacian_check(cst, 0.5, 0.0, {0.5, 1.0, 1.5})) {
    CHECK(std::abs(s.margin) < 1e-10);
  }

  // Spherical decomposition at several admissible betas.
  SolitonInstance sph = spherical_decomposition(2);
  for (double beta : {0.3, 0.5, 0.7}) {
    for (const auto& s : harnack_laplacian_check(sph, beta, 0.0, linspace(0.5, 2.5, 20))) {
      CHECK(s.margin >= -1e-5);
    }
  }

  // The inequality is only claimed along solutions.
  SolitonInstance off(seg,
                      ScalarProfile::sample(seg.grid(),
                                            [](double r) { return std::exp(r * r); }, "f"),
                      ScalarProfile::constant(seg.grid(), 0.0, "rho"), 2, 0.0);
  CHECK_THROWS_AS(harnack_laplacian_check(off, 0.5, 0.0, {1.0}), Error);
}

TEST_CASE("quadratic root bound") {
  // b = 0: bound equals the positive root of z^2 <= c.
  CHECK(quadratic_root_bound(1.0, 0.0, 4.0) == doctest::Approx(2.0).epsilon(1e-15));
  // Quadratic-formula oracle: root of 2z^2 - 2z - 8 is (1 + sqrt(17))/2.
  const double bound = quadratic_root_bound(2.0, 2.0, 8.0);
  CHECK(bound == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(bound >= (1.0 + std::sqrt(17.0)) / 2.0);

  std::mt19937 rng(31415u);
  std::uniform_real_distribution<double> dist(1e-12, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = dist(rng), b = dist(rng), c = dist(rng);
    const double z = quadratic_root_bound(a, b, c);
    const double root = (b + std::sqrt(b * b + 4.0 * a * c)) / (2.0 * a);
    CHECK(z >= root);
  }

  CHECK_THROWS_AS(quadratic_root_bound(0.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(quadratic_root_bound(-2.0, 1.0, 1.0), Error);
}

TEST_CASE("max point trace") {
  CutoffSpec spec = build_cutoff(CutoffFamily::cos4);

  // L < 0 everywhere: G tops out at 0 on the dead zone, the trivial branch.
  SolitonInstance hyp = hyperbolic_decomposition(2, 3.0, 301);
  MaxPointTrace trivial = max_point_trace(hyp, 0.5, spec, 1.0);
  CHECK_FALSE(trivial.positive_branch);
  CHECK(trivial.value <= 0.0);

  // Constant positive L: the max sits on the psi = 1 plateau.
  ModelBase seg = line_base(0.0, 3.0, 301);
  SolitonInstance steady(seg, ScalarProfile::constant(seg.grid(), 1.0, "f"),
                         ScalarProfile::constant(seg.grid(), 1.0, "rho"), 2, 0.0);
  MaxPointTrace plateau = max_point_trace(steady, 0.5, spec, 1.0);
  CHECK(plateau.positive_branch);
  CHECK(plateau.value == doctest::Approx(2.0));  // L = rho k = 2
  CHECK(plateau.r <= 1.0);

  // Synthetic interior max at r = 1 has vanishing FD gradient there.
  RadialGrid grid(0.0, 2.0, 201);
  ScalarProfile L = ScalarProfile::sample(
      grid, [](double r) { return 1.0 - (r - 1.0) * (r - 1.0); }, "L");
  ScalarProfile psi = ScalarProfile::constant(grid, 1.0, "psi");
  MaxPointTrace interior = trace_profile_max(L, psi);
  CHECK(interior.r == doctest::Approx(1.0));
  CHECK(interior.gradient_norm <= 1e-6);
  CHECK(interior.positive_branch);
}
