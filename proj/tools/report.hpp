#ifndef WARPEST_TOOLS_REPORT_HPP
#define WARPEST_TOOLS_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "toml.hpp"
#include "warpest/grid.hpp"

namespace warpest::cli {

using ordered_json = nlohmann::ordered_json;

/// One finished run: the JSON document (top-level keys config_echo,
/// constants, reports, verdicts, meta), the process exit code and the
/// profiles to emit as CSV when an output directory is given.
struct RunReport {
  ordered_json doc;
  int exit_code = 0;
  std::vector<ScalarProfile> profiles;
};

ordered_json toml_to_json(const TomlValue& value);

/// Summary of a profile for the JSON report (the full data goes to CSV).
ordered_json profile_summary(const ScalarProfile& profile);

/// 64-bit FNV-1a rendered as 16 hex chars.
std::string fnv1a_hex(const std::string& text);

/// Assembles the final document. The content hash covers everything except
/// meta.wall_time_ms and meta.report_hash, so identical configs give
/// identical hashes across runs.
RunReport finalize_report(const TomlValue& config_echo, ordered_json constants,
                          ordered_json reports, ordered_json verdict_items,
                          const std::string& subcommand, std::uint64_t seed,
                          double wall_time_ms, int exit_on_success,
                          std::vector<ScalarProfile> profiles);

/// CSV with columns exactly `r,value`, 17 significant digits.
void write_profile_csv(const ScalarProfile& profile, const std::string& path);

ordered_json make_verdict(const std::string& name, bool pass);
ordered_json make_verdict(const std::string& name, bool pass, double value);

}  // namespace warpest::cli

#endif  // WARPEST_TOOLS_REPORT_HPP
