#ifndef WARPEST_ERRORS_HPP
#define WARPEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace warpest {

enum class ErrorCode {
  grid_too_coarse,
  domain_invalid,
  grid_mismatch,
  singular_origin,
  non_positive_input,
  no_convergence,
  positivity_lost,
  param_out_of_range,
  missing_bound,
  empty_admissible_set,
  unsupported_family,
  not_a_solution,
  config_invalid,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown when an integrated profile crosses zero; carries the first crossing radius.
class PositivityLost : public Error {
 public:
  PositivityLost(double crossing_radius, const std::string& what)
      : Error(ErrorCode::positivity_lost, what), crossing_radius_(crossing_radius) {}

  double crossing_radius() const { return crossing_radius_; }

 private:
  double crossing_radius_;
};

}  // namespace warpest

#endif  // WARPEST_ERRORS_HPP
