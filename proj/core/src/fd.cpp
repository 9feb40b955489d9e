#include "warpest/fd.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace warpest {
namespace fd {

namespace {

// Fourth-order-accurate stencils (weights * 12h or * 12h^2). The boundary
// rows come from the standard one-sided tables; each one is exact on
// polynomials through degree four (the six-point second-derivative rows
// through degree five).
struct RawStencil {
  int first_offset;
  std::array<double, 6> w;
  int size;
};

constexpr RawStencil kD1At0{0, {-25, 48, -36, 16, -3, 0}, 5};
constexpr RawStencil kD1At1{-1, {-3, -10, 18, -6, 1, 0}, 5};
constexpr RawStencil kD1Mid{-2, {1, -8, 0, 8, -1, 0}, 5};
constexpr RawStencil kD1AtM2{-3, {-1, 6, -18, 10, 3, 0}, 5};
constexpr RawStencil kD1AtM1{-4, {3, -16, 36, -48, 25, 0}, 5};

constexpr RawStencil kD2At0{0, {45, -154, 214, -156, 61, -10}, 6};
constexpr RawStencil kD2At1{-1, {10, -15, -4, 14, -6, 1}, 6};
constexpr RawStencil kD2Mid{-2, {-1, 16, -30, 16, -1, 0}, 5};
constexpr RawStencil kD2AtM2{-4, {1, -6, 14, -4, -15, 10}, 6};
constexpr RawStencil kD2AtM1{-5, {-10, 61, -156, 214, -154, 45}, 6};

const RawStencil& pick_d1(int i, int n) {
  if (i == 0) return kD1At0;
  if (i == 1) return kD1At1;
  if (i == n - 2) return kD1AtM2;
  if (i == n - 1) return kD1AtM1;
  return kD1Mid;
}

const RawStencil& pick_d2(int i, int n) {
  if (i == 0) return kD2At0;
  if (i == 1) return kD2At1;
  if (i == n - 2) return kD2AtM2;
  if (i == n - 1) return kD2AtM1;
  return kD2Mid;
}

double apply(const RawStencil& s, const std::vector<double>& u, int i, double scale) {
  double acc = 0.0;
  for (int j = 0; j < s.size; ++j) acc += s.w[j] * u[i + s.first_offset + j];
  return acc * scale;
}

std::vector<StencilEntry> to_entries(const RawStencil& s, double scale) {
  std::vector<StencilEntry> out;
  out.reserve(s.size);
  for (int j = 0; j < s.size; ++j) {
    out.push_back({s.first_offset + j, s.w[j] * scale});
  }
  return out;
}

}  // namespace

std::vector<double> derivative(const std::vector<double>& u, double h) {
  const int n = static_cast<int>(u.size());
  const double scale = 1.0 / (12.0 * h);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = apply(pick_d1(i, n), u, i, scale);
  return out;
}

std::vector<double> second_derivative(const std::vector<double>& u, double h) {
  const int n = static_cast<int>(u.size());
  const double scale = 1.0 / (12.0 * h * h);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = apply(pick_d2(i, n), u, i, scale);
  return out;
}

ScalarProfile derivative(const ScalarProfile& u) {
  return ScalarProfile(u.grid(), derivative(u.values(), u.grid().spacing()),
                       u.label().empty() ? "" : u.label() + "'");
}

ScalarProfile second_derivative(const ScalarProfile& u) {
  return ScalarProfile(u.grid(), second_derivative(u.values(), u.grid().spacing()),
                       u.label().empty() ? "" : u.label() + "''");
}

std::vector<StencilEntry> derivative_stencil(int i, int n, double h) {
  return to_entries(pick_d1(i, n), 1.0 / (12.0 * h));
}

std::vector<StencilEntry> second_derivative_stencil(int i, int n, double h) {
  return to_entries(pick_d2(i, n), 1.0 / (12.0 * h * h));
}

double interpolate(const ScalarProfile& p, double r) {
  const RadialGrid& g = p.grid();
  const int n = g.count();
  const double h = g.spacing();
  double x = (r - g.r_min()) / h;
  x = std::clamp(x, 0.0, static_cast<double>(n - 1));

  int i0 = static_cast<int>(std::floor(x)) - 2;
  i0 = std::clamp(i0, 0, n - 6);

  // On-node shortcut keeps constant and sampled data bit-exact.
  int nearest = static_cast<int>(std::lround(x));
  if (std::abs(x - nearest) < 1e-12) return p[nearest];

  double acc = 0.0;
  for (int j = i0; j < i0 + 6; ++j) {
    double lj = 1.0;
    for (int l = i0; l < i0 + 6; ++l) {
      if (l == j) continue;
      lj *= (x - l) / static_cast<double>(j - l);
    }
    acc += lj * p[j];
  }
  return acc;
}

}  // namespace fd
}  // namespace warpest
