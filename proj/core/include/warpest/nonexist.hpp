#ifndef WARPEST_NONEXIST_HPP
#define WARPEST_NONEXIST_HPP

#include <string>
#include <vector>

#include "warpest/warpfield.hpp"

namespace warpest {

/// Hypotheses of a nonexistence probe: the soliton function class, the fiber
/// Einstein constant, and the certified curvature/oscillation bounds.
enum class RhoKind { zero, positive_constant, other };

const char* to_string(RhoKind kind);
RhoKind rho_kind_from_string(const std::string& name);

struct Scenario {
  RhoKind rho_kind = RhoKind::zero;
  double rho_value = 0.0;  // the constant, when rho_kind != other
  double theta = 0.0;
  double K = 0.0;
  double gamma = 0.0;
  int k = 1;
  int n = 1;
  double m = 1.0;
  bool f_bounded = true;
};

/// nonexistent: the global estimate forces a sign contradiction.
/// forced_constant: the estimate forces |grad f| = 0 (the Einstein-style
/// variant: rho = 0, theta = 0, nonnegative weighted Ricci).
/// no_obstruction: the probe certifies nothing.
enum class Outcome { nonexistent, forced_constant, no_obstruction };

const char* to_string(Outcome outcome);

struct Verdict {
  Outcome outcome = Outcome::no_obstruction;
  std::string certificate;
  double global_rhs = 0.0;  // reproduced from compute_constants
  double lhs_floor = 0.0;   // the term that stays positive (0 if none)
};

Verdict nonexistence_probe(const Scenario& scenario);

/// Sphere x euclidean product check: the weighted curvature tensor
/// Ric + Hess h - dh x dh for h(x,y) = -log((3 - s)/n), s the height
/// function on the unit n-sphere, reduced to the scalar s in [-1,1].
/// The sphere block is isotropic with eigenvalue (n-1) - s/(3-s); the
/// euclidean block vanishes. Minimum over samples is n - 3/2 at s = 1.
struct SphereProductReport {
  int n = 0;
  int samples = 0;
  double min_eigenvalue = 0.0;
  double argmin_s = 0.0;
  double euclidean_eigenvalue = 0.0;
  double max_anisotropy = 0.0;  // sphere-block deviation from a multiple of I
  double max_offdiagonal = 0.0;
};
SphereProductReport example_sphere_product(int n, int sample_count);

/// Numerical corroboration of a nonexistent scenario: integrates the warp
/// equation on a flat weighted line realizing K = 0, gamma = 0 and reports
/// how positivity or boundedness fails. Refuses scenarios the probe does not
/// certify.
struct BlowupWitness {
  Scenario scenario;
  IvpTrace trace;
  std::string summary;
};
BlowupWitness numeric_blowup_witness(const Scenario& scenario, double domain_length);

}  // namespace warpest

#endif  // WARPEST_NONEXIST_HPP
