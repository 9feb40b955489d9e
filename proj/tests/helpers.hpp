#ifndef WARPEST_TESTS_HELPERS_HPP
#define WARPEST_TESTS_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "warpest/warpfield.hpp"

namespace warpest::testing {

inline ModelBase line_base(double r_min, double r_max, int count, double m = 1.0) {
  return build_radial_base(BaseKind::line_segment, 1, r_min, r_max, count, 0.0, m);
}

/// Closed-form instance: f = e^r, rho = -k, theta = 0 on a flat line
/// (the warped-line decomposition of hyperbolic space).
inline SolitonInstance hyperbolic_decomposition(int k = 2, double r_max = 3.0, int count = 301,
                                                double m = 1.0) {
  ModelBase base = line_base(0.0, r_max, count, m);
  ScalarProfile f = ScalarProfile::sample(base.grid(), [](double r) { return std::exp(r); }, "f");
  ScalarProfile rho = ScalarProfile::constant(base.grid(), -static_cast<double>(k), "rho");
  return SolitonInstance(std::move(base), std::move(f), std::move(rho), k, 0.0);
}

/// Closed-form instance: f = sin r, rho = k, theta = k-1 on [0.1, 3.0]
/// (the warped-line decomposition of the round sphere).
inline SolitonInstance spherical_decomposition(int k = 2, int count = 291, double m = 1.0) {
  ModelBase base = line_base(0.1, 3.0, count, m);
  ScalarProfile f = ScalarProfile::sample(base.grid(), [](double r) { return std::sin(r); }, "f");
  ScalarProfile rho = ScalarProfile::constant(base.grid(), static_cast<double>(k), "rho");
  return SolitonInstance(std::move(base), std::move(f), std::move(rho), k,
                         static_cast<double>(k - 1));
}

inline std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
  return out;
}

/// Random positive profile with values in roughly [0.2, 5].
inline ScalarProfile random_positive_profile(const RadialGrid& grid, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.6, 1.6);
  std::vector<double> values(grid.count());
  for (double& v : values) v = std::exp(dist(rng));
  return ScalarProfile(grid, std::move(values), "random");
}

/// Random smooth positive profile a e^{br} + c with mild coefficients.
inline ScalarProfile random_smooth_positive(const RadialGrid& grid, std::mt19937& rng) {
  std::uniform_real_distribution<double> amp(0.5, 2.0);
  std::uniform_real_distribution<double> rate(-0.8, 0.8);
  const double a = amp(rng), b = rate(rng), c = amp(rng);
  return ScalarProfile::sample(
      grid, [=](double r) { return a * std::exp(b * r) + c; }, "random smooth");
}

}  // namespace warpest::testing

#endif  // WARPEST_TESTS_HELPERS_HPP
