#include "warpest/grid.hpp"

#include <algorithm>
#include <cmath>

namespace warpest {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::grid_too_coarse: return "GridTooCoarse";
    case ErrorCode::domain_invalid: return "DomainInvalid";
    case ErrorCode::grid_mismatch: return "GridMismatch";
    case ErrorCode::singular_origin: return "SingularOrigin";
    case ErrorCode::non_positive_input: return "NonPositiveInput";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::positivity_lost: return "PositivityLost";
    case ErrorCode::param_out_of_range: return "ParamOutOfRange";
    case ErrorCode::missing_bound: return "MissingM";
    case ErrorCode::empty_admissible_set: return "EmptyAdmissibleSet";
    case ErrorCode::unsupported_family: return "UnsupportedFamily";
    case ErrorCode::not_a_solution: return "NotASolution";
    case ErrorCode::config_invalid: return "ConfigInvalid";
  }
  return "UnknownError";
}

RadialGrid::RadialGrid(double r_min, double r_max, int count)
    : r_min_(r_min), r_max_(r_max), count_(count) {
  if (!(std::isfinite(r_min) && std::isfinite(r_max))) {
    throw Error(ErrorCode::domain_invalid, "grid bounds must be finite");
  }
  if (r_min < 0.0) {
    throw Error(ErrorCode::domain_invalid, "r_min must be >= 0");
  }
  if (!(r_max > r_min)) {
    throw Error(ErrorCode::domain_invalid, "r_max must exceed r_min");
  }
  if (count < 9) {
    throw Error(ErrorCode::grid_too_coarse, "grid needs at least 9 nodes, got " +
                                                std::to_string(count));
  }
  if (count % 2 == 0) {
    throw Error(ErrorCode::grid_too_coarse,
                "node count must be odd, got " + std::to_string(count));
  }
  spacing_ = (r_max - r_min) / static_cast<double>(count - 1);
}

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> out(count_);
  for (int i = 0; i < count_; ++i) out[i] = node(i);
  return out;
}

int RadialGrid::nearest_index(double r) const {
  double x = (r - r_min_) / spacing_;
  int i = static_cast<int>(std::lround(x));
  return std::clamp(i, 0, count_ - 1);
}

bool RadialGrid::same_as(const RadialGrid& other) const {
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  return count_ == other.count_ && close(r_min_, other.r_min_) && close(r_max_, other.r_max_);
}

ScalarProfile::ScalarProfile(RadialGrid grid, std::vector<double> values, std::string label)
    : grid_(grid), values_(std::move(values)), label_(std::move(label)) {
  if (static_cast<int>(values_.size()) != grid_.count()) {
    throw Error(ErrorCode::grid_mismatch,
                "profile '" + label_ + "' has " + std::to_string(values_.size()) +
                    " values for a " + std::to_string(grid_.count()) + "-node grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::domain_invalid, "profile '" + label_ + "' has non-finite values");
    }
  }
}

ScalarProfile ScalarProfile::sample(const RadialGrid& grid,
                                    const std::function<double(double)>& fn, std::string label) {
  std::vector<double> values(grid.count());
  for (int i = 0; i < grid.count(); ++i) values[i] = fn(grid.node(i));
  return ScalarProfile(grid, std::move(values), std::move(label));
}

ScalarProfile ScalarProfile::constant(const RadialGrid& grid, double value, std::string label) {
  return ScalarProfile(grid, std::vector<double>(grid.count(), value), std::move(label));
}

double ScalarProfile::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double ScalarProfile::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

bool ScalarProfile::positive() const { return min_value() > 0.0; }

ScalarProfile ScalarProfile::with_label(std::string label) const {
  return ScalarProfile(grid_, values_, std::move(label));
}

ScalarProfile ScalarProfile::map(const std::function<double(double)>& fn,
                                 std::string label) const {
  std::vector<double> out(values_.size());
  for (size_t i = 0; i < values_.size(); ++i) out[i] = fn(values_[i]);
  return ScalarProfile(grid_, std::move(out), std::move(label));
}

ScalarProfile ScalarProfile::zip(const ScalarProfile& a, const ScalarProfile& b,
                                 const std::function<double(double, double)>& fn,
                                 std::string label) {
  require_same_grid(a, b);
  std::vector<double> out(a.values_.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = fn(a.values_[i], b.values_[i]);
  return ScalarProfile(a.grid_, std::move(out), std::move(label));
}

void require_same_grid(const RadialGrid& a, const RadialGrid& b) {
  if (!a.same_as(b)) {
    throw Error(ErrorCode::grid_mismatch, "profiles live on different grids");
  }
}

void require_same_grid(const ScalarProfile& a, const ScalarProfile& b) {
  require_same_grid(a.grid(), b.grid());
}

}  // namespace warpest
