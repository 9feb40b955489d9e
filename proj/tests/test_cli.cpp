#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

// The driver binary and the sample configs, injected by the build.
#ifndef WARPEST_CLI_PATH
#error "WARPEST_CLI_PATH must be defined"
#endif
#ifndef WARPEST_CONFIG_DIR
#error "WARPEST_CONFIG_DIR must be defined"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

int unpack_exit(int status) {
#ifdef _WIN32
  return status;
#else
  return WEXITSTATUS(status);
#endif
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = fs::temp_directory_path() / ("warpest_cli_" +
                                                    std::to_string(++counter) + ".out");
  const std::string cmd = std::string(WARPEST_CLI_PATH) + " " + args + " > " + out.string() +
                          " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  fs::remove(out);
  return {unpack_exit(status), buf.str()};
}

std::string config(const std::string& name) {
  return std::string(WARPEST_CONFIG_DIR) + "/" + name;
}

fs::path write_temp_config(const std::string& text) {
  static int counter = 0;
  const fs::path path = fs::temp_directory_path() / ("warpest_cfg_" +
                                                     std::to_string(++counter) + ".toml");
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("subcommand exit codes") {
  CHECK(run_cli("solve --config " + config("solve_hyperbolic.toml")).exit_code == 0);
  CHECK(run_cli("verify --config " + config("verify_hyperbolic.toml")).exit_code == 0);
  CHECK(run_cli("proofcheck --config " + config("proofcheck_euclidean.toml")).exit_code == 0);
  CHECK(run_cli("sweep --config " + config("sweep_demo.toml")).exit_code == 0);
  // Nonexistence certification is the expected success of the probe.
  CHECK(run_cli("nonexist --config " + config("nonexist_steady.toml")).exit_code == 3);

  RunResult example = run_cli("example --config " + config("example_products.toml"));
  CHECK(example.exit_code == 0);
  json doc = json::parse(example.stdout_text);
  CHECK(doc["reports"]["hyperbolic"]["residual_interior_max"].get<double>() < 1e-8);
  CHECK(doc["reports"]["spherical"]["residual_interior_max"].get<double>() < 1e-8);
}

TEST_CASE("usage and config errors exit 1") {
  CHECK(run_cli("solve").exit_code == 1);                       // missing --config
  CHECK(run_cli("frobnicate --config x.toml").exit_code == 1);  // unknown subcommand
  CHECK(run_cli("solve --config /nonexistent.toml").exit_code == 1);

  // Malformed TOML.
  fs::path bad = write_temp_config("[base\nkind = ");
  CHECK(run_cli("solve --config " + bad.string()).exit_code == 1);
  fs::remove(bad);
}

TEST_CASE("beta outside the admissible window names the window") {
  fs::path cfg = write_temp_config(R"(
[base]
kind = "line-segment"
n = 1
r_min = 0.0
r_max = 3.0
count = 301

[instance]
k = 2
theta = 0.0
rho = { form = "const", value = -2.0 }
f = { form = "exp", rate = 1.0 }

[estimate]
beta = 1.5
)");
  RunResult r = run_cli("verify --config " + cfg.string());
  fs::remove(cfg);
  CHECK(r.exit_code == 1);
  CHECK(r.stdout_text.find("estimate.beta") != std::string::npos);
  CHECK(r.stdout_text.find("window") != std::string::npos);
  CHECK(r.stdout_text.find("1-2/k") != std::string::npos);
}

TEST_CASE("failed inequality exits 2") {
  // rho = 0, theta = -1 on a constant warp: global bound must fail.
  fs::path cfg = write_temp_config(R"(
[base]
kind = "line-segment"
n = 1
r_min = 0.0
r_max = 2.0
count = 201

[instance]
k = 2
theta = -1.0
rho = { form = "const", value = 0.0 }
f = { form = "const", value = 1.0 }

[estimate]
beta = 0.5
K = 0.0
gamma = 0.0
R = "inf"
)");
  RunResult r = run_cli("verify --config " + cfg.string());
  fs::remove(cfg);
  CHECK(r.exit_code == 2);
}

TEST_CASE("reports are byte-deterministic modulo wall time") {
  RunResult a = run_cli("verify --config " + config("verify_hyperbolic.toml") + " --seed 7");
  RunResult b = run_cli("verify --config " + config("verify_hyperbolic.toml") + " --seed 7");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);

  json ja = json::parse(a.stdout_text);
  json jb = json::parse(b.stdout_text);
  CHECK(ja["meta"]["report_hash"] == jb["meta"]["report_hash"]);
  ja["meta"].erase("wall_time_ms");
  jb["meta"].erase("wall_time_ms");
  CHECK(ja == jb);

  // The report keeps the declared top-level shape.
  const char* keys[] = {"config_echo", "constants", "reports", "verdicts", "meta"};
  for (const char* key : keys) CHECK(ja.contains(key));
}

TEST_CASE("CSV profiles use exactly r,value with 17 significant digits") {
  const fs::path out_dir = fs::temp_directory_path() / "warpest_csv_test";
  fs::remove_all(out_dir);
  RunResult r = run_cli("solve --config " + config("solve_hyperbolic.toml") + " --out " +
                        out_dir.string());
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(out_dir / "report.json"));
  REQUIRE(fs::exists(out_dir / "v.csv"));

  std::ifstream csv(out_dir / "v.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "r,value");
  std::string first;
  std::getline(csv, first);
  CHECK(first == "0,1");
  // A node with a non-trivial value renders at full precision.
  std::string line;
  int count = 1;
  std::string last;
  while (std::getline(csv, line)) {
    if (!line.empty()) {
      last = line;
      ++count;
    }
  }
  CHECK(count == 301);
  CHECK(last.substr(0, 2) == "3,");
  CHECK(last.find("403.428") != std::string::npos);
  fs::remove_all(out_dir);
}
