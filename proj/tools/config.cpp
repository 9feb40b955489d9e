#include "config.hpp"

#include <cmath>

namespace warpest::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::config_invalid, "config error at " + path + ": " + what);
}

const TomlValue& require(const TomlValue& table, const std::string& path,
                         const std::string& key) {
  const TomlValue* v = table.find(key);
  if (!v) fail(path + "." + key, "missing required field");
  return *v;
}

double get_double(const TomlValue& table, const std::string& path, const std::string& key) {
  const TomlValue& v = require(table, path, key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.as_double();
}

double get_double_or(const TomlValue& table, const std::string& path, const std::string& key,
                     double fallback) {
  const TomlValue* v = table.find(key);
  if (!v) return fallback;
  if (!v->is_number()) fail(path + "." + key, "expected a number");
  return v->as_double();
}

int get_int(const TomlValue& table, const std::string& path, const std::string& key) {
  const TomlValue& v = require(table, path, key);
  if (v.kind() != TomlValue::Kind::integer) fail(path + "." + key, "expected an integer");
  return static_cast<int>(v.as_int());
}

int get_int_or(const TomlValue& table, const std::string& path, const std::string& key,
               int fallback) {
  const TomlValue* v = table.find(key);
  if (!v) return fallback;
  if (v->kind() != TomlValue::Kind::integer) fail(path + "." + key, "expected an integer");
  return static_cast<int>(v->as_int());
}

std::string get_string(const TomlValue& table, const std::string& path,
                       const std::string& key) {
  const TomlValue& v = require(table, path, key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.as_string();
}

std::string get_string_or(const TomlValue& table, const std::string& path,
                          const std::string& key, const std::string& fallback) {
  const TomlValue* v = table.find(key);
  if (!v) return fallback;
  if (!v->is_string()) fail(path + "." + key, "expected a string");
  return v->as_string();
}

bool get_bool_or(const TomlValue& table, const std::string& path, const std::string& key,
                 bool fallback) {
  const TomlValue* v = table.find(key);
  if (!v) return fallback;
  if (!v->is_bool()) fail(path + "." + key, "expected a boolean");
  return v->as_bool();
}

std::vector<double> number_array(const TomlValue& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.as_array().size());
  for (const TomlValue& item : v.as_array()) {
    if (!item.is_number()) fail(path, "expected an array of numbers");
    out.push_back(item.as_double());
  }
  return out;
}

/// "auto" (or absence) leaves the optional empty; a number pins it.
std::optional<double> get_auto_double(const TomlValue& table, const std::string& path,
                                      const std::string& key) {
  const TomlValue* v = table.find(key);
  if (!v) return std::nullopt;
  if (v->is_string()) {
    if (v->as_string() == "auto") return std::nullopt;
    fail(path + "." + key, "expected a number or \"auto\"");
  }
  if (!v->is_number()) fail(path + "." + key, "expected a number or \"auto\"");
  return v->as_double();
}

ProfileSpec parse_profile(const TomlValue& v, const std::string& path) {
  if (!v.is_table()) {
    fail(path, "expected an inline table like { form = \"const\", value = 0.0 }");
  }
  ProfileSpec spec;
  if (v.has("values")) {
    spec.form = ProfileSpec::Form::raw;
    spec.raw_values = number_array(require(v, path, "values"), path + ".values");
    return spec;
  }
  const std::string form = get_string(v, path, "form");
  if (form == "const") {
    spec.form = ProfileSpec::Form::constant;
    spec.value = get_double(v, path, "value");
  } else if (form == "exp") {
    spec.form = ProfileSpec::Form::exponential;
    spec.amplitude = get_double_or(v, path, "amplitude", 1.0);
    spec.rate = get_double(v, path, "rate");
  } else if (form == "sin") {
    spec.form = ProfileSpec::Form::sine;
    spec.amplitude = get_double_or(v, path, "amplitude", 1.0);
    spec.rate = get_double_or(v, path, "frequency", 1.0);
  } else if (form == "poly") {
    spec.form = ProfileSpec::Form::poly;
    spec.coeffs = number_array(require(v, path, "coeffs"), path + ".coeffs");
    if (spec.coeffs.empty()) fail(path + ".coeffs", "needs at least one coefficient");
  } else {
    fail(path + ".form", "unknown profile form '" + form + "' (const, exp, sin, poly)");
  }
  return spec;
}

}  // namespace

ScalarProfile ProfileSpec::sample(const RadialGrid& grid, const std::string& label) const {
  switch (form) {
    case Form::constant:
      return ScalarProfile::constant(grid, value, label);
    case Form::exponential:
      return ScalarProfile::sample(
          grid, [this](double r) { return amplitude * std::exp(rate * r); }, label);
    case Form::sine:
      return ScalarProfile::sample(
          grid, [this](double r) { return amplitude * std::sin(rate * r); }, label);
    case Form::poly:
      return ScalarProfile::sample(
          grid,
          [this](double r) {
            double acc = 0.0;
            for (size_t i = coeffs.size(); i-- > 0;) acc = acc * r + coeffs[i];
            return acc;
          },
          label);
    case Form::raw:
      return ScalarProfile(grid, raw_values, label);
  }
  throw Error(ErrorCode::config_invalid, "unreachable profile form");
}

ModelBase BaseSection::build() const {
  ScalarProfile hp = h.sample(RadialGrid(r_min, r_max, count), "h");
  return build_radial_base(kind, n, r_min, r_max, count, hp.values(), m);
}

ScalarProfile InstanceSection::rho_profile(const ModelBase& base) const {
  return rho.sample(base.grid(), "rho");
}

SolitonInstance InstanceSection::build(const ModelBase& base) const {
  if (!f) {
    throw Error(ErrorCode::config_invalid,
                "config error at instance.f: this subcommand needs a warping profile");
  }
  return SolitonInstance(base, f->sample(base.grid(), "f"), rho_profile(base), k, theta);
}

EstimateParams EstimateSection::params(const SolitonInstance& instance) const {
  EstimateParams p;
  p.n = instance.base.n();
  p.m = instance.base.m();
  p.k = instance.k;
  p.theta = instance.theta;
  p.beta = beta;
  p.eps = eps;
  p.c1 = c1;
  p.c2 = c2;
  p.R = R;
  p.M = M;

  const RadialGrid& grid = instance.base.grid();
  const double region_hi =
      std::isinf(R) ? grid.r_max() : std::min(grid.r_max(), 2.0 * R);
  p.K = K ? *K : bakry_emery_lower_bound(instance.base, grid.r_min(), region_hi);
  p.gamma = gamma ? *gamma : gamma_from_profile(instance.rho, grid.r_min(), region_hi);
  return p;
}

RunConfig load_config(const std::string& path) {
  RunConfig config;
  config.root = parse_toml_file(path);
  const TomlValue& root = config.root;

  if (const TomlValue* base = root.find("base")) {
    BaseSection section;
    section.kind = base_kind_from_string(get_string(*base, "base", "kind"));
    section.n = get_int(*base, "base", "n");
    section.m = get_double_or(*base, "base", "m", 1.0);
    section.r_min = get_double(*base, "base", "r_min");
    section.r_max = get_double(*base, "base", "r_max");
    section.count = get_int(*base, "base", "count");
    if (const TomlValue* h = base->find("h")) {
      section.h = parse_profile(*h, "base.h");
    }
    config.base = section;
  }

  if (const TomlValue* inst = root.find("instance")) {
    InstanceSection section;
    section.k = get_int(*inst, "instance", "k");
    if (section.k < 1) fail("instance.k", "fiber dimension must be >= 1");
    section.theta = get_double_or(*inst, "instance", "theta", 0.0);
    section.rho = parse_profile(require(*inst, "instance", "rho"), "instance.rho");
    if (const TomlValue* f = inst->find("f")) {
      section.f = parse_profile(*f, "instance.f");
    }
    config.instance = section;
  }

  if (const TomlValue* solve = root.find("solve")) {
    SolveConfig& sc = config.solve.config;
    sc.v0 = get_double_or(*solve, "solve", "v0", 1.0);
    if (const TomlValue* slope = solve->find("slope0")) {
      if (slope->is_string()) {
        if (slope->as_string() != "auto-zero") {
          fail("solve.slope0", "expected a number or \"auto-zero\"");
        }
      } else if (slope->is_number()) {
        sc.slope0 = slope->as_double();
      } else {
        fail("solve.slope0", "expected a number or \"auto-zero\"");
      }
    }
    const std::string method = get_string_or(*solve, "solve", "method", "shooting");
    if (method == "shooting") {
      sc.method = SolveMethod::shooting;
    } else if (method == "collocation") {
      sc.method = SolveMethod::collocation;
    } else {
      fail("solve.method", "expected \"shooting\" or \"collocation\"");
    }
    sc.tol = get_double_or(*solve, "solve", "tol", 1e-8);
    sc.max_iter = get_int_or(*solve, "solve", "max_iter", 50);
    const std::string boundary = get_string_or(*solve, "solve", "boundary", "free");
    if (boundary == "free") {
      sc.boundary = BoundaryCondition::free_slope;
    } else if (boundary == "neumann") {
      sc.boundary = BoundaryCondition::neumann;
    } else if (boundary == "dirichlet") {
      sc.boundary = BoundaryCondition::dirichlet;
    } else {
      fail("solve.boundary", "expected \"free\", \"neumann\" or \"dirichlet\"");
    }
    sc.boundary_value = get_double_or(*solve, "solve", "boundary_value", 0.0);
  }

  if (const TomlValue* est = root.find("estimate")) {
    EstimateSection section;
    section.beta = get_double(*est, "estimate", "beta");
    section.eps = get_double_or(*est, "estimate", "eps", 0.5);
    section.K = get_auto_double(*est, "estimate", "K");
    section.gamma = get_auto_double(*est, "estimate", "gamma");
    section.c1 = get_double_or(*est, "estimate", "c1", 2.0);
    section.c2 = get_double_or(*est, "estimate", "c2", 16.0);
    if (const TomlValue* R = est->find("R")) {
      if (R->is_string()) {
        if (R->as_string() != "inf") fail("estimate.R", "expected a number or \"inf\"");
        section.R = EstimateParams::infinite_radius();
      } else if (R->is_number()) {
        section.R = R->as_double();
      } else {
        fail("estimate.R", "expected a number or \"inf\"");
      }
    }
    section.M = get_auto_double(*est, "estimate", "M");

    // Cross-field admissibility is enforced at parse time.
    if (config.instance) {
      const double lo = EstimateParams::beta_window_low(config.instance->k);
      if (!(section.beta > lo) || !(section.beta < 1.0)) {
        fail("estimate.beta",
             "value " + std::to_string(section.beta) +
                 " outside the admissible window (max(0, 1-2/k), 1) = (" + std::to_string(lo) +
                 ", 1) for k = " + std::to_string(config.instance->k));
      }
    }
    if (!(section.eps > 0.0) || !(section.eps < 1.0)) {
      fail("estimate.eps", "must lie in (0, 1)");
    }
    config.estimate = section;
  }

  if (const TomlValue* sweep = root.find("sweep")) {
    SweepSection section;
    section.beta_grid = number_array(require(*sweep, "sweep", "beta"), "sweep.beta");
    section.eps_grid = number_array(require(*sweep, "sweep", "eps"), "sweep.eps");
    config.sweep = section;
  }

  if (const TomlValue* pc = root.find("proofcheck")) {
    ProofcheckSection section;
    if (const TomlValue* fams = pc->find("families")) {
      if (!fams->is_array()) fail("proofcheck.families", "expected an array of family names");
      section.families.clear();
      for (const TomlValue& f : fams->as_array()) {
        if (!f.is_string()) fail("proofcheck.families", "expected an array of family names");
        section.families.push_back(cutoff_family_from_string(f.as_string()));
      }
    }
    section.R = get_double_or(*pc, "proofcheck", "R", 1.0);
    section.samples = get_int_or(*pc, "proofcheck", "samples", 50);
    section.lemma_trials = get_int_or(*pc, "proofcheck", "lemma_trials", 1000);
    config.proofcheck = section;
  }

  if (const TomlValue* sc = root.find("scenario")) {
    ScenarioSection section;
    section.scenario.rho_kind = rho_kind_from_string(get_string(*sc, "scenario", "rho"));
    section.scenario.rho_value = get_double_or(*sc, "scenario", "rho_value", 0.0);
    section.scenario.theta = get_double(*sc, "scenario", "theta");
    section.scenario.K = get_double_or(*sc, "scenario", "K", 0.0);
    section.scenario.gamma = get_double_or(*sc, "scenario", "gamma", 0.0);
    section.scenario.k = get_int(*sc, "scenario", "k");
    section.scenario.n = get_int_or(*sc, "scenario", "n", 1);
    section.scenario.m = get_double_or(*sc, "scenario", "m", 1.0);
    section.scenario.f_bounded = get_bool_or(*sc, "scenario", "f_bounded", true);
    section.witness = get_bool_or(*sc, "scenario", "witness", false);
    section.domain_length = get_double_or(*sc, "scenario", "domain_length", 10.0);
    config.scenario = section;
  }

  if (const TomlValue* ex = root.find("example")) {
    ExampleSection section;
    if (const TomlValue* dims = ex->find("n")) {
      section.dimensions.clear();
      for (double d : number_array(*dims, "example.n")) {
        section.dimensions.push_back(static_cast<int>(d));
      }
    }
    section.samples = get_int_or(*ex, "example", "samples", 201);
    config.example = section;
  }

  if (const TomlValue* out = root.find("output")) {
    config.output.csv = get_bool_or(*out, "output", "csv", false);
  }

  return config;
}

}  // namespace warpest::cli
