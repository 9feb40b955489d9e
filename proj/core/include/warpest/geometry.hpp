#ifndef WARPEST_GEOMETRY_HPP
#define WARPEST_GEOMETRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "warpest/grid.hpp"

namespace warpest {

/// Rotationally symmetric model base: metric dr^2 + phi(r)^2 g_{S^{n-1}},
/// weight function h, and Bakry-Emery parameter m. For n = 1 the angular
/// term is absent and phi is identically 1.
enum class BaseKind { line_segment, euclidean_cone, hyperbolic, spherical };

const char* to_string(BaseKind kind);
BaseKind base_kind_from_string(const std::string& name);

class ModelBase {
 public:
  ModelBase(int n, BaseKind kind, ScalarProfile phi, ScalarProfile h, double m);

  int n() const { return n_; }
  BaseKind kind() const { return kind_; }
  const ScalarProfile& phi() const { return phi_; }
  const ScalarProfile& h() const { return h_; }
  double m() const { return m_; }
  const RadialGrid& grid() const { return phi_.grid(); }

  /// Cached finite-difference derivatives of phi and h.
  const ScalarProfile& phi_prime() const { return phi_prime_; }
  const ScalarProfile& h_prime() const { return h_prime_; }

  /// True when the weight is constant (the drift term vanishes identically).
  bool weight_is_constant() const { return weight_constant_; }

  /// (n-1) phi'/phi at node i; 0 when n = 1.
  double angular_coefficient(int i) const;
  /// Same, at an off-node radius. Uses the closed form of phi per kind so the
  /// shooting integrator can evaluate between nodes.
  double angular_coefficient_at(double r) const;
  /// Drift coefficient h'(r), interpolated (0 for constant weight).
  double drift_coefficient_at(double r) const;

 private:
  int n_;
  BaseKind kind_;
  ScalarProfile phi_;
  ScalarProfile h_;
  double m_;
  ScalarProfile phi_prime_;
  ScalarProfile h_prime_;
  bool weight_constant_;
};

/// Builds a model base with phi populated from the kind. Rejects spherical
/// domains reaching pi and grids that include the axis for n >= 2 only at
/// operator level (the base itself may hold r_min = 0).
ModelBase build_radial_base(BaseKind kind, int n, double r_min, double r_max, int count,
                            std::vector<double> h_values, double m);
ModelBase build_radial_base(BaseKind kind, int n, double r_min, double r_max, int count,
                            double h_constant, double m);

/// How to treat the node r = 0 on bases with n >= 2. The default rejects it;
/// even_extension assumes smooth radial data (u'(0) = 0) and uses the limit
/// value n * u''(0) for the Laplacian at the axis.
enum class OriginPolicy { reject, even_extension };

/// |grad u|^2 = (u')^2 by fourth-order differences.
ScalarProfile gradient_norm_sq(const ModelBase& base, const ScalarProfile& u);

/// Plain Laplacian u'' + (n-1)(phi'/phi) u'.
ScalarProfile laplacian(const ModelBase& base, const ScalarProfile& u,
                        OriginPolicy origin = OriginPolicy::reject);

/// Drifting Laplacian u'' + (n-1)(phi'/phi) u' - h'u'.
ScalarProfile drift_laplacian(const ModelBase& base, const ScalarProfile& u,
                              OriginPolicy origin = OriginPolicy::reject);

/// Radial and tangential eigenvalues of Ric + Hess h - (1/m) dh x dh on the
/// model base. The tangential family is absent for n = 1.
struct RicciEigenvalues {
  ScalarProfile radial;
  std::optional<ScalarProfile> tangential;
};
RicciEigenvalues bakry_emery_eigenvalues(const ModelBase& base);

/// K = max(0, -min eigenvalue) over grid nodes in [r_a, r_b]. Dips below the
/// finite-difference noise floor (1e-9) count as zero, so flat bases certify
/// K = 0 exactly.
double bakry_emery_lower_bound(const ModelBase& base, double r_a, double r_b);

/// One sample of the weighted-Laplacian comparison for the distance function:
/// the r^2 form lhs = FD value of drift_laplacian(r^2) against
/// rhs = n(1 + sqrt(1 + 4Kr^2/n)), and the derived linear form
/// lhs = drift_laplacian(r) against rhs = (n-1)/r + sqrt(nK).
struct ComparisonSample {
  double r;
  double lhs_sq;
  double rhs_sq;
  double margin_sq;
  double lhs_dist;
  double rhs_dist;
  double margin_dist;
};
std::vector<ComparisonSample> qian_comparison_check(const ModelBase& base, double K,
                                                    const std::vector<double>& radii);

}  // namespace warpest

#endif  // WARPEST_GEOMETRY_HPP
