#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "warpest/fd.hpp"

namespace warpest::cli {

namespace {

constexpr double kMarginTol = 1e-6;
constexpr double kHarnackMarginTol = 1e-5;

class WallTimer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

const BaseSection& require_base(const RunConfig& config) {
  if (!config.base) {
    throw Error(ErrorCode::config_invalid, "config error at base: section required");
  }
  return *config.base;
}

const InstanceSection& require_instance(const RunConfig& config) {
  if (!config.instance) {
    throw Error(ErrorCode::config_invalid, "config error at instance: section required");
  }
  return *config.instance;
}

std::vector<double> interior_radii(const RadialGrid& grid, int count) {
  // Samples spread over the central part of the grid, away from the
  // one-sided stencil rows.
  const double pad = 10.0 * grid.spacing();
  const double lo = grid.r_min() + pad;
  const double hi = grid.r_max() - pad;
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
  return out;
}

/// Standard deviation of theta normalized by max(1, f^2), plus the mean.
struct ThetaConstancy {
  double mean;
  double stddev;
};
ThetaConstancy theta_constancy(const SolitonInstance& inst) {
  ScalarProfile th = theta_profile(
      inst, inst.base.grid().r_min() == 0.0 && inst.base.n() >= 2 ? OriginPolicy::even_extension
                                                                  : OriginPolicy::reject);
  double mean = 0.0;
  std::vector<double> scaled(th.size());
  for (int i = 0; i < th.size(); ++i) {
    scaled[i] = th[i] / std::max(1.0, inst.f[i] * inst.f[i]);
    mean += scaled[i];
  }
  mean /= scaled.size();
  double var = 0.0;
  for (double x : scaled) var += (x - mean) * (x - mean);
  return {mean, std::sqrt(var / scaled.size())};
}

ordered_json bound_report_json(const BoundReport& report) {
  return ordered_json{{"rhs", report.rhs},
                      {"margin_min", report.margin_min},
                      {"pass", report.pass},
                      {"witness_r", report.witness_r},
                      {"witness_index", report.witness_index},
                      {"lhs_max", report.lhs[report.witness_index]},
                      {"solution_residual", report.solution_residual},
                      {"is_solution", report.is_solution},
                      {"lhs", profile_summary(report.lhs)}};
}

ordered_json constants_json(const ConstantsBundle& c, const EstimateParams& p) {
  return ordered_json{{"H", c.H},       {"P", c.P},         {"Q", c.Q},
                      {"S", c.S},       {"M", c.M},         {"K", p.K},
                      {"gamma", p.gamma}, {"beta", p.beta},  {"eps", p.eps},
                      {"R", p.r_infinite() ? ordered_json("inf") : ordered_json(p.R)}};
}

}  // namespace

RunReport cmd_solve(const RunConfig& config, std::uint64_t seed) {
  WallTimer timer;
  ModelBase base = require_base(config).build();
  const InstanceSection& inst = require_instance(config);
  ScalarProfile rho = inst.rho_profile(base);
  const SolveConfig& sc = config.solve.config;

  ordered_json reports = ordered_json::object();
  ordered_json verdicts = ordered_json::array();
  std::vector<ScalarProfile> profiles;

  try {
    ScalarProfile v = solve_warp_ode(base, rho, inst.theta, inst.k, sc);
    ScalarProfile f = v_to_f(v, inst.k).with_label("f");
    const double residual = warp_residual_interior_max(base, v, rho, inst.k, inst.theta);
    SolitonInstance solved(base, f, rho, inst.k, inst.theta);
    ThetaConstancy constancy = theta_constancy(solved);

    reports["solve"] = ordered_json{{"method", sc.method == SolveMethod::shooting
                                                   ? "shooting"
                                                   : "collocation"},
                                    {"residual_interior_max", residual},
                                    {"theta_mean", constancy.mean},
                                    {"theta_stddev", constancy.stddev},
                                    {"v", profile_summary(v)},
                                    {"f", profile_summary(f)}};
    verdicts.push_back(make_verdict("warp-residual", residual <= sc.tol, residual));
    verdicts.push_back(
        make_verdict("theta-constant", constancy.stddev <= 1e-6, constancy.stddev));

    profiles.push_back(v.with_label("v"));
    profiles.push_back(f);
    profiles.push_back(
        warp_residual(base, v, rho, inst.k, inst.theta,
                      base.grid().r_min() == 0.0 && base.n() >= 2
                          ? OriginPolicy::even_extension
                          : OriginPolicy::reject)
            .with_label("residual"));
  } catch (const PositivityLost& e) {
    reports["solve"] = ordered_json{{"error", "PositivityLost"},
                                    {"crossing_radius", e.crossing_radius()},
                                    {"message", e.what()}};
    verdicts.push_back(make_verdict("positivity", false, e.crossing_radius()));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::no_convergence) throw;
    reports["solve"] = ordered_json{{"error", "NoConvergence"}, {"message", e.what()}};
    verdicts.push_back(make_verdict("convergence", false));
  }

  return finalize_report(config.root, ordered_json::object(), std::move(reports),
                         std::move(verdicts), "solve", seed, timer.elapsed_ms(), 0,
                         std::move(profiles));
}

RunReport cmd_verify(const RunConfig& config, std::uint64_t seed) {
  WallTimer timer;
  ModelBase base = require_base(config).build();
  SolitonInstance inst = require_instance(config).build(base);
  if (!config.estimate) {
    throw Error(ErrorCode::config_invalid, "config error at estimate: section required");
  }
  EstimateParams params = config.estimate->params(inst);

  ordered_json reports = ordered_json::object();
  ordered_json verdicts = ordered_json::array();
  std::vector<ScalarProfile> profiles;

  // Hypothesis certification: K and gamma from the data, and the
  // subharmonicity of rho checked pointwise, reported rather than assumed.
  ScalarProfile lap_rho = drift_laplacian(
      base, inst.rho, base.grid().r_min() == 0.0 && base.n() >= 2 ? OriginPolicy::even_extension
                                                                  : OriginPolicy::reject);
  const double lap_rho_min = lap_rho.min_value();
  reports["hypotheses"] = ordered_json{{"K", params.K},
                                       {"gamma", params.gamma},
                                       {"drift_laplacian_rho_min", lap_rho_min}};
  verdicts.push_back(make_verdict("rho-subharmonic", lap_rho_min >= -kMarginTol, lap_rho_min));

  ConstantsBundle constants{};
  if (!params.r_infinite()) {
    BoundReport local = local_estimate(inst, params);
    reports["local"] = bound_report_json(local);
    verdicts.push_back(make_verdict("local-estimate", local.pass, local.margin_min));
    constants = local.constants;
    profiles.push_back(local.lhs.with_label("lhs_local"));
  }
  BoundReport global = global_estimate(inst, params);
  reports["global"] = bound_report_json(global);
  verdicts.push_back(make_verdict("global-estimate", global.pass, global.margin_min));
  if (params.r_infinite()) constants = global.constants;
  profiles.push_back(global.lhs.with_label("lhs_global"));
  profiles.push_back(inst.f.with_label("f"));

  return finalize_report(config.root, constants_json(constants, params), std::move(reports),
                         std::move(verdicts), "verify", seed, timer.elapsed_ms(), 0,
                         std::move(profiles));
}

RunReport cmd_proofcheck(const RunConfig& config, std::uint64_t seed) {
  WallTimer timer;
  ModelBase base = require_base(config).build();
  const ProofcheckSection& pc = config.proofcheck;

  ordered_json reports = ordered_json::object();
  ordered_json verdicts = ordered_json::array();
  ordered_json constants = ordered_json::object();
  std::vector<ScalarProfile> profiles;

  const double K = bakry_emery_lower_bound(base, base.grid().r_min(), base.grid().r_max());
  reports["K_certified"] = K;

  // Cutoff certification and the two cutoff inequalities per family.
  for (CutoffFamily family : pc.families) {
    CutoffSpec spec = build_cutoff(family);
    const std::string name = to_string(family);
    constants[name] = ordered_json{{"c1", spec.c1}, {"c2", spec.c2}};
    CutoffMarginReport margins = cutoff_gradient_check(spec, base, K, pc.R);
    reports["cutoff"][name] = ordered_json{
        {"slope_margin_min", margins.slope_margin_min},
        {"laplacian_margin_min", margins.laplacian_margin_min}};
    verdicts.push_back(make_verdict("cutoff-slope-" + name,
                                    margins.slope_margin_min >= -kMarginTol,
                                    margins.slope_margin_min));
    verdicts.push_back(make_verdict("cutoff-laplacian-" + name,
                                    margins.laplacian_margin_min >= -kMarginTol,
                                    margins.laplacian_margin_min));
    profiles.push_back(cutoff_profile(family, base.grid(), pc.R)
                           .with_label("psi_" + name));
  }

  // Distance-Laplacian comparison at sampled radii.
  const std::vector<double> radii = interior_radii(base.grid(), pc.samples);
  double qian_sq_min = std::numeric_limits<double>::infinity();
  double qian_dist_min = std::numeric_limits<double>::infinity();
  for (const auto& s : qian_comparison_check(base, K, radii)) {
    qian_sq_min = std::min(qian_sq_min, s.margin_sq);
    qian_dist_min = std::min(qian_dist_min, s.margin_dist);
  }
  reports["comparison"] = ordered_json{{"margin_sq_min", qian_sq_min},
                                       {"margin_dist_min", qian_dist_min}};
  verdicts.push_back(make_verdict("comparison-sq", qian_sq_min >= -kMarginTol, qian_sq_min));
  verdicts.push_back(
      make_verdict("comparison-dist", qian_dist_min >= -kMarginTol, qian_dist_min));

  // Weighted Bochner inequality over the standard battery.
  const std::vector<std::pair<std::string, std::function<double(double)>>> battery = {
      {"r", [](double r) { return r; }},
      {"r^2", [](double r) { return r * r; }},
      {"r^3", [](double r) { return r * r * r; }},
      {"sin", [](double r) { return std::sin(r); }},
      {"exp", [](double r) { return std::exp(r); }},
      {"const", [](double) { return 2.5; }}};
  double bochner_min = std::numeric_limits<double>::infinity();
  for (const auto& [name, fn] : battery) {
    ScalarProfile u = ScalarProfile::sample(base.grid(), fn, name);
    for (const auto& s : bochner_check(base, u, K, radii)) {
      bochner_min = std::min(bochner_min, s.margin);
    }
  }
  reports["bochner"] = ordered_json{{"margin_min", bochner_min}};
  verdicts.push_back(make_verdict("bochner", bochner_min >= -kMarginTol, bochner_min));

  // The Harnack-quantity inequality, on the configured instance when one is
  // given, else on the built-in warped-line solution f = e^r.
  double beta = config.estimate ? config.estimate->beta : 0.5;
  double harnack_min = std::numeric_limits<double>::infinity();
  if (config.instance && config.instance->f) {
    SolitonInstance inst = config.instance->build(base);
    for (const auto& s : harnack_laplacian_check(inst, beta, K, radii)) {
      harnack_min = std::min(harnack_min, s.margin);
    }
  } else {
    ModelBase line = build_radial_base(BaseKind::line_segment, 1, 0.0, 3.0, 301, 0.0, 1.0);
    SolitonInstance inst(
        line, ScalarProfile::sample(line.grid(), [](double r) { return std::exp(r); }, "f"),
        ScalarProfile::constant(line.grid(), -2.0, "rho"), 2, 0.0);
    for (const auto& s :
         harnack_laplacian_check(inst, beta, 0.0, interior_radii(line.grid(), pc.samples))) {
      harnack_min = std::min(harnack_min, s.margin);
    }
  }
  reports["harnack"] = ordered_json{{"beta", beta}, {"margin_min", harnack_min}};
  verdicts.push_back(
      make_verdict("harnack-laplacian", harnack_min >= -kHarnackMarginTol, harnack_min));

  // Quadratic-root lemma property run (seeded).
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(1e-12, 10.0);
  int violations = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pc.lemma_trials; ++i) {
    const double a = dist(rng), b = dist(rng), c = dist(rng);
    const double bound = quadratic_root_bound(a, b, c);
    const double root = (b + std::sqrt(b * b + 4.0 * a * c)) / (2.0 * a);
    min_gap = std::min(min_gap, bound - root);
    if (bound < root) ++violations;
  }
  reports["root_lemma"] = ordered_json{{"trials", pc.lemma_trials},
                                       {"violations", violations},
                                       {"min_gap", min_gap}};
  verdicts.push_back(make_verdict("root-lemma", violations == 0,
                                  static_cast<double>(violations)));

  return finalize_report(config.root, std::move(constants), std::move(reports),
                         std::move(verdicts), "proofcheck", seed, timer.elapsed_ms(), 0,
                         std::move(profiles));
}

RunReport cmd_nonexist(const RunConfig& config, std::uint64_t seed) {
  WallTimer timer;
  if (!config.scenario) {
    throw Error(ErrorCode::config_invalid, "config error at scenario: section required");
  }
  const ScenarioSection& section = *config.scenario;

  ordered_json reports = ordered_json::object();
  ordered_json verdicts = ordered_json::array();

  Verdict verdict = nonexistence_probe(section.scenario);
  reports["probe"] = ordered_json{{"outcome", to_string(verdict.outcome)},
                                  {"certificate", verdict.certificate},
                                  {"global_rhs", verdict.global_rhs},
                                  {"lhs_floor", verdict.lhs_floor}};
  verdicts.push_back(make_verdict("probe-ran", true));

  const bool certified = verdict.outcome != Outcome::no_obstruction;
  if (section.witness && verdict.outcome == Outcome::nonexistent) {
    BlowupWitness witness = numeric_blowup_witness(section.scenario, section.domain_length);
    const char* status = witness.trace.status == IvpTrace::Status::positivity_lost
                             ? "positivity-lost"
                             : witness.trace.status == IvpTrace::Status::growth_unbounded
                                   ? "growth-unbounded"
                                   : "completed";
    reports["witness"] = ordered_json{
        {"status", status},
        {"summary", witness.summary},
        {"crossing_radius", witness.trace.crossing_radius},
        {"max_gradient_ratio", witness.trace.max_gradient_ratio},
        {"nodes_reached", witness.trace.r.size()}};
    // The witness corroborates only if the candidate actually failed.
    verdicts.push_back(
        make_verdict("witness", witness.trace.status != IvpTrace::Status::completed));
  }

  return finalize_report(config.root, ordered_json::object(), std::move(reports),
                         std::move(verdicts), "nonexist", seed, timer.elapsed_ms(),
                         certified ? 3 : 0, {});
}

RunReport cmd_example(const RunConfig& config, std::uint64_t seed) {
  WallTimer timer;
  ordered_json reports = ordered_json::object();
  ordered_json verdicts = ordered_json::array();
  std::vector<ScalarProfile> profiles;

  // Sphere x euclidean product reduction.
  ordered_json spheres = ordered_json::array();
  for (int n : config.example.dimensions) {
    SphereProductReport r = example_sphere_product(n, config.example.samples);
    spheres.push_back(ordered_json{{"n", r.n},
                                   {"min_eigenvalue", r.min_eigenvalue},
                                   {"argmin_s", r.argmin_s},
                                   {"euclidean_eigenvalue", r.euclidean_eigenvalue},
                                   {"max_anisotropy", r.max_anisotropy},
                                   {"max_offdiagonal", r.max_offdiagonal}});
    const bool ok = std::abs(r.min_eigenvalue - (n - 1.5)) < 1e-9 &&
                    r.max_anisotropy < 1e-12 && r.max_offdiagonal < 1e-12;
    verdicts.push_back(
        make_verdict("sphere-product-n" + std::to_string(n), ok, r.min_eigenvalue));
  }
  reports["sphere_product"] = std::move(spheres);

  // The two closed-form decompositions, reconstructed by the solver.
  struct Decomposition {
    const char* name;
    double r_min, r_max;
    int count, k;
    double rho, theta, v0, slope0;
    double expected_theta;
  };
  const Decomposition cases[] = {
      // f = e^r: rho = -k, theta = 0; v = e^{kr} from slope k.
      {"hyperbolic", 0.0, 3.0, 301, 2, -2.0, 0.0, 1.0, 2.0, 0.0},
      // f = sin r: rho = k, theta = k-1; v = sin^k from the matching slope.
      {"spherical", 0.1, 3.0, 291, 2, 2.0, 1.0, std::pow(std::sin(0.1), 2.0),
       2.0 * std::sin(0.1) * std::cos(0.1), 1.0},
  };
  for (const Decomposition& d : cases) {
    ModelBase base = build_radial_base(BaseKind::line_segment, 1, d.r_min, d.r_max, d.count,
                                       0.0, 1.0);
    ScalarProfile rho = ScalarProfile::constant(base.grid(), d.rho, "rho");
    SolveConfig sc;
    sc.v0 = d.v0;
    sc.slope0 = d.slope0;
    ScalarProfile v = solve_warp_ode(base, rho, d.theta, d.k, sc);
    const double residual = warp_residual_interior_max(base, v, rho, d.k, d.theta);
    SolitonInstance inst(base, v_to_f(v, d.k).with_label("f"), rho, d.k, d.theta);
    ThetaConstancy constancy = theta_constancy(inst);

    EstimateParams params;
    params.beta = 0.5;
    params.eps = 0.5;
    params.K = 0.0;
    params.gamma = 0.0;
    params.R = 1.0;
    BoundReport local = local_estimate(inst, params);
    BoundReport global = global_estimate(inst, params);

    reports[d.name] = ordered_json{{"residual_interior_max", residual},
                                   {"theta_mean", constancy.mean},
                                   {"theta_expected", d.expected_theta},
                                   {"theta_stddev", constancy.stddev},
                                   {"local", bound_report_json(local)},
                                   {"global", bound_report_json(global)}};
    const std::string prefix = std::string(d.name);
    verdicts.push_back(make_verdict(prefix + "-residual", residual < 1e-8, residual));
    verdicts.push_back(make_verdict(prefix + "-theta",
                                    std::abs(constancy.mean - d.expected_theta) < 1e-6 &&
                                        constancy.stddev < 1e-6,
                                    constancy.stddev));
    verdicts.push_back(make_verdict(prefix + "-local", local.pass, local.margin_min));
    verdicts.push_back(make_verdict(prefix + "-global", global.pass, global.margin_min));
    profiles.push_back(inst.f.with_label(prefix + "_f"));
  }

  return finalize_report(config.root, ordered_json::object(), std::move(reports),
                         std::move(verdicts), "example", seed, timer.elapsed_ms(), 0,
                         std::move(profiles));
}

RunReport cmd_sweep(const RunConfig& config, std::uint64_t seed) {
  WallTimer timer;
  ModelBase base = require_base(config).build();
  SolitonInstance inst = require_instance(config).build(base);
  if (!config.estimate) {
    throw Error(ErrorCode::config_invalid, "config error at estimate: section required");
  }
  if (!config.sweep) {
    throw Error(ErrorCode::config_invalid, "config error at sweep: section required");
  }
  EstimateParams params = config.estimate->params(inst);

  SweepResult result = optimize_rhs(inst, params, config.sweep->beta_grid,
                                    config.sweep->eps_grid);

  ordered_json table = ordered_json::array();
  for (const SweepPoint& p : result.table) {
    table.push_back(ordered_json{{"beta", p.beta},
                                 {"eps", p.eps},
                                 {"rhs", p.admissible ? ordered_json(p.rhs)
                                                      : ordered_json(nullptr)},
                                 {"admissible", p.admissible}});
  }
  ordered_json reports = ordered_json{{"best", ordered_json{{"beta", result.beta},
                                                            {"eps", result.eps},
                                                            {"rhs", result.rhs}}},
                                      {"table", std::move(table)}};

  EstimateParams best = params;
  best.beta = result.beta;
  best.eps = result.eps;
  if (inst.theta >= 0.0 && !best.M) {
    const RadialGrid& grid = base.grid();
    best.M = sup_inverse_f_sq(inst.f, grid.r_min(),
                              best.r_infinite() ? grid.r_max()
                                                : std::min(grid.r_max(), 2.0 * best.R));
  }
  ConstantsBundle constants = compute_constants(best);

  ordered_json verdicts = ordered_json::array();
  verdicts.push_back(make_verdict("sweep", std::isfinite(result.rhs), result.rhs));

  std::vector<ScalarProfile> profiles;
  profiles.push_back(estimate_lhs(inst, result.beta).with_label("lhs_best"));

  return finalize_report(config.root, constants_json(constants, best), std::move(reports),
                         std::move(verdicts), "sweep", seed, timer.elapsed_ms(), 0,
                         std::move(profiles));
}

}  // namespace warpest::cli
