#ifndef WARPEST_TOOLS_CONFIG_HPP
#define WARPEST_TOOLS_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "toml.hpp"
#include "warpest/bounds.hpp"
#include "warpest/nonexist.hpp"
#include "warpest/proofcheck.hpp"

namespace warpest::cli {

/// Profile selector: a closed form ({const, exp, sin, poly} with
/// coefficients) or a raw value array, sampled onto the base grid.
struct ProfileSpec {
  enum class Form { constant, exponential, sine, poly, raw };
  Form form = Form::constant;
  double value = 0.0;              // const
  double amplitude = 1.0;          // exp: a e^{b r}; sin: a sin(b r)
  double rate = 1.0;
  std::vector<double> coeffs;      // poly: c0 + c1 r + ...
  std::vector<double> raw_values;  // raw

  ScalarProfile sample(const RadialGrid& grid, const std::string& label) const;
};

struct BaseSection {
  BaseKind kind = BaseKind::line_segment;
  int n = 1;
  double m = 1.0;
  double r_min = 0.0;
  double r_max = 1.0;
  int count = 101;
  ProfileSpec h;

  ModelBase build() const;
};

struct InstanceSection {
  int k = 1;
  double theta = 0.0;
  ProfileSpec rho;
  std::optional<ProfileSpec> f;

  SolitonInstance build(const ModelBase& base) const;
  ScalarProfile rho_profile(const ModelBase& base) const;
};

struct SolveSection {
  SolveConfig config;
};

struct EstimateSection {
  double beta = 0.5;
  double eps = 0.5;
  std::optional<double> K;      // empty = certify from the base
  std::optional<double> gamma;  // empty = max |rho'| from the profile
  double c1 = 2.0;
  double c2 = 16.0;
  double R = 1.0;               // may be inf
  std::optional<double> M;      // empty = sup f^-2 from the profile

  EstimateParams params(const SolitonInstance& instance) const;
};

struct SweepSection {
  std::vector<double> beta_grid;
  std::vector<double> eps_grid;
};

struct ProofcheckSection {
  std::vector<CutoffFamily> families{CutoffFamily::cos4, CutoffFamily::quartic_poly};
  double R = 1.0;
  int samples = 50;
  int lemma_trials = 1000;
};

struct ScenarioSection {
  Scenario scenario;
  bool witness = false;
  double domain_length = 10.0;
};

struct ExampleSection {
  std::vector<int> dimensions{2, 3, 4, 5, 6};
  int samples = 201;
};

struct OutputSection {
  bool csv = false;
};

struct RunConfig {
  TomlValue root;  // echoed into reports
  std::optional<BaseSection> base;
  std::optional<InstanceSection> instance;
  SolveSection solve;
  std::optional<EstimateSection> estimate;
  std::optional<SweepSection> sweep;
  ProofcheckSection proofcheck;
  std::optional<ScenarioSection> scenario;
  ExampleSection example;
  OutputSection output;
  double tol = 1e-8;
};

/// Parses and validates a config file; error messages carry field paths.
RunConfig load_config(const std::string& path);

}  // namespace warpest::cli

#endif  // WARPEST_TOOLS_CONFIG_HPP
