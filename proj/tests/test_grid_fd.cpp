#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "warpest/fd.hpp"
#include "warpest/grid.hpp"

using namespace warpest;

TEST_CASE("radial grid validation") {
  CHECK_THROWS_AS(RadialGrid(0.0, 2.0, 7), Error);    // too coarse
  CHECK_THROWS_AS(RadialGrid(0.0, 2.0, 10), Error);   // even count
  CHECK_THROWS_AS(RadialGrid(2.0, 2.0, 11), Error);   // empty domain
  CHECK_THROWS_AS(RadialGrid(-0.5, 2.0, 11), Error);  // negative radius

  try {
    RadialGrid(0.0, 2.0, 8);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::grid_too_coarse);
  }
}

TEST_CASE("radial grid nodes are uniform, increasing, with a midpoint") {
  RadialGrid grid(0.5, 2.5, 201);
  CHECK(grid.spacing() == doctest::Approx(0.01).epsilon(1e-14));
  auto nodes = grid.nodes();
  for (size_t i = 1; i < nodes.size(); ++i) {
    CHECK(nodes[i] > nodes[i - 1]);
    CHECK(std::abs((nodes[i] - nodes[i - 1]) - grid.spacing()) < 1e-12 * grid.spacing());
  }
  CHECK(grid.node((grid.count() - 1) / 2) == doctest::Approx(1.5));
  CHECK(grid.nearest_index(1.504) == 100);
}

TEST_CASE("profile validation") {
  RadialGrid grid(0.0, 1.0, 11);
  CHECK_THROWS_AS(ScalarProfile(grid, std::vector<double>(10, 1.0)), Error);
  std::vector<double> bad(11, 1.0);
  bad[4] = std::nan("");
  CHECK_THROWS_AS(ScalarProfile(grid, bad), Error);

  ScalarProfile p = ScalarProfile::sample(grid, [](double r) { return 2 * r; }, "2r");
  CHECK(p.max_value() == doctest::Approx(2.0));
  CHECK(p.min_value() == doctest::Approx(0.0));
}

TEST_CASE("fd derivatives are exact on random cubics") {
  // Oracle: analytic differentiation of p(r) = c0 + c1 r + c2 r^2 + c3 r^3.
  std::mt19937 rng(20240811u);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  RadialGrid grid(0.0, 2.0, 201);
  for (int trial = 0; trial < 50; ++trial) {
    const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
    ScalarProfile p = ScalarProfile::sample(
        grid, [=](double r) { return c0 + c1 * r + c2 * r * r + c3 * r * r * r; });
    ScalarProfile d1 = fd::derivative(p);
    ScalarProfile d2 = fd::second_derivative(p);
    for (int i = 0; i < grid.count(); ++i) {
      const double r = grid.node(i);
      CHECK(std::abs(d1[i] - (c1 + 2 * c2 * r + 3 * c3 * r * r)) < 1e-8);
      CHECK(std::abs(d2[i] - (2 * c2 + 6 * c3 * r)) < 1e-8);
    }
  }
}

TEST_CASE("fd derivatives hit fourth-order accuracy on sin") {
  RadialGrid grid(0.0, 3.0, 301);
  ScalarProfile p = ScalarProfile::sample(grid, [](double r) { return std::sin(r); });
  ScalarProfile d1 = fd::derivative(p);
  ScalarProfile d2 = fd::second_derivative(p);
  for (int i = 2; i + 2 < grid.count(); ++i) {
    const double r = grid.node(i);
    CHECK(std::abs(d1[i] - std::cos(r)) < 1e-9);
    CHECK(std::abs(d2[i] + std::sin(r)) < 1e-8);
  }
  // One-sided ends stay fourth order, just with a larger constant.
  CHECK(std::abs(d1[0] - 1.0) < 1e-7);
  CHECK(std::abs(d2[grid.count() - 1] + std::sin(3.0)) < 1e-6);
}

TEST_CASE("interpolation is exact on nodes and on cubics") {
  RadialGrid grid(0.5, 2.5, 101);
  ScalarProfile cubic = ScalarProfile::sample(
      grid, [](double r) { return 1.0 - 2.0 * r + 0.5 * r * r * r; });
  CHECK(fd::interpolate(cubic, grid.node(37)) == cubic[37]);
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> dist(0.5, 2.5);
  for (int i = 0; i < 100; ++i) {
    const double r = dist(rng);
    const double want = 1.0 - 2.0 * r + 0.5 * r * r * r;
    CHECK(std::abs(fd::interpolate(cubic, r) - want) < 1e-12);
  }
  ScalarProfile wave = ScalarProfile::sample(grid, [](double r) { return std::sin(3 * r); });
  for (int i = 0; i < 100; ++i) {
    const double r = dist(rng);
    CHECK(std::abs(fd::interpolate(wave, r) - std::sin(3 * r)) < 1e-9);
  }
}
