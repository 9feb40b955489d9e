#ifndef WARPEST_GRID_HPP
#define WARPEST_GRID_HPP

#include <functional>
#include <string>
#include <vector>

#include "warpest/errors.hpp"

namespace warpest {

/// Uniform radial grid r_min = r_0 < r_1 < ... < r_{count-1} = r_max.
///
/// The node count is odd and at least 9: odd so the midpoint is a node
/// (symmetric tests rely on it), at least 9 so the five- and six-point
/// finite-difference stencils never overlap both ends.
class RadialGrid {
 public:
  RadialGrid(double r_min, double r_max, int count);

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  int count() const { return count_; }
  double spacing() const { return spacing_; }

  double node(int i) const { return r_min_ + spacing_ * i; }
  std::vector<double> nodes() const;

  /// Index of the node nearest to r (clamped to the grid).
  int nearest_index(double r) const;

  bool same_as(const RadialGrid& other) const;

 private:
  double r_min_;
  double r_max_;
  int count_;
  double spacing_;
};

/// A sampled radial function: one value per grid node, plus a label used
/// for report/CSV output.
class ScalarProfile {
 public:
  ScalarProfile(RadialGrid grid, std::vector<double> values, std::string label = "");

  /// Samples fn at every node.
  static ScalarProfile sample(const RadialGrid& grid, const std::function<double(double)>& fn,
                              std::string label = "");
  static ScalarProfile constant(const RadialGrid& grid, double value, std::string label = "");

  const RadialGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::string& label() const { return label_; }

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  double r(int i) const { return grid_.node(i); }

  double min_value() const;
  double max_value() const;
  bool positive() const;

  ScalarProfile with_label(std::string label) const;

  /// Pointwise map; the result keeps the grid.
  ScalarProfile map(const std::function<double(double)>& fn, std::string label = "") const;
  /// Pointwise combination of two profiles on the same grid.
  static ScalarProfile zip(const ScalarProfile& a, const ScalarProfile& b,
                           const std::function<double(double, double)>& fn,
                           std::string label = "");

 private:
  RadialGrid grid_;
  std::vector<double> values_;
  std::string label_;
};

/// Throws GridMismatch unless both profiles live on the same grid.
void require_same_grid(const ScalarProfile& a, const ScalarProfile& b);
void require_same_grid(const RadialGrid& a, const RadialGrid& b);

}  // namespace warpest

#endif  // WARPEST_GRID_HPP
