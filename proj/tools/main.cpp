#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "report.hpp"
#include "warpest/version.hpp"

namespace {

using warpest::cli::RunConfig;
using warpest::cli::RunReport;

std::string sanitize_filename(const std::string& label) {
  std::string out;
  for (char c : label) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  }
  return out.empty() ? "profile" : out;
}

int run(const std::string& subcommand, const std::string& config_path,
        const std::string& out_dir, double tol_override, std::uint64_t seed) {
  RunConfig config = warpest::cli::load_config(config_path);
  if (tol_override > 0.0) {
    config.tol = tol_override;
    config.solve.config.tol = tol_override;
  }

  RunReport report;
  if (subcommand == "solve") {
    report = warpest::cli::cmd_solve(config, seed);
  } else if (subcommand == "verify") {
    report = warpest::cli::cmd_verify(config, seed);
  } else if (subcommand == "proofcheck") {
    report = warpest::cli::cmd_proofcheck(config, seed);
  } else if (subcommand == "nonexist") {
    report = warpest::cli::cmd_nonexist(config, seed);
  } else if (subcommand == "example") {
    report = warpest::cli::cmd_example(config, seed);
  } else {
    report = warpest::cli::cmd_sweep(config, seed);
  }

  const std::string text = report.doc.dump(2);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream json_out(out_dir + "/report.json");
    json_out << text << "\n";
    if (config.output.csv) {
      for (const auto& profile : report.profiles) {
        warpest::cli::write_profile_csv(
            profile, out_dir + "/" + sanitize_filename(profile.label()) + ".csv");
      }
    }
  }
  std::cout << text << std::endl;
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warpest: warped-product soliton workbench"};
  app.set_version_flag("--version", std::string(warpest::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  double tol = 0.0;
  std::uint64_t seed = 12345;

  const char* names[] = {"solve", "verify", "proofcheck", "nonexist", "example", "sweep"};
  const char* descriptions[] = {
      "solve the warping equation on a model base",
      "evaluate the gradient-estimate bounds on an instance",
      "certify the proof-chain inequalities on a base",
      "run a nonexistence probe (exit 3 = certified)",
      "check the product-base example and the closed-form decompositions",
      "minimize the estimate rhs over a (beta, eps) grid",
  };
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
    sub->add_option("--config", config_path, "TOML run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "directory for report.json and CSV profiles");
    sub->add_option("--tol", tol, "override the solver tolerance");
    sub->add_option("--seed", seed, "seed for randomized property runs");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), config_path, out_dir, tol, seed);
  } catch (const warpest::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
