#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "warpest/version.hpp"

namespace warpest::cli {

ordered_json toml_to_json(const TomlValue& value) {
  switch (value.kind()) {
    case TomlValue::Kind::boolean:
      return value.as_bool();
    case TomlValue::Kind::integer:
      return value.as_int();
    case TomlValue::Kind::real: {
      const double d = value.as_double();
      if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
      return d;
    }
    case TomlValue::Kind::string:
      return value.as_string();
    case TomlValue::Kind::array: {
      ordered_json arr = ordered_json::array();
      for (const TomlValue& item : value.as_array()) arr.push_back(toml_to_json(item));
      return arr;
    }
    case TomlValue::Kind::table: {
      ordered_json obj = ordered_json::object();
      for (const auto& [key, item] : value.as_table()) obj[key] = toml_to_json(item);
      return obj;
    }
  }
  return nullptr;
}

ordered_json profile_summary(const ScalarProfile& profile) {
  return ordered_json{{"label", profile.label()},
                      {"count", profile.size()},
                      {"r_min", profile.grid().r_min()},
                      {"r_max", profile.grid().r_max()},
                      {"min", profile.min_value()},
                      {"max", profile.max_value()}};
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= static_cast<std::uint64_t>(c);
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buf);
}

RunReport finalize_report(const TomlValue& config_echo, ordered_json constants,
                          ordered_json reports, ordered_json verdict_items,
                          const std::string& subcommand, std::uint64_t seed,
                          double wall_time_ms, int exit_on_success,
                          std::vector<ScalarProfile> profiles) {
  bool all_pass = true;
  for (const auto& item : verdict_items) {
    if (item.contains("pass") && !item["pass"].get<bool>()) all_pass = false;
  }
  const int exit_code = all_pass ? exit_on_success : 2;

  RunReport report;
  report.exit_code = exit_code;
  report.profiles = std::move(profiles);
  report.doc = ordered_json{{"config_echo", toml_to_json(config_echo)},
                            {"constants", std::move(constants)},
                            {"reports", std::move(reports)},
                            {"verdicts", ordered_json{{"items", std::move(verdict_items)},
                                                      {"all_pass", all_pass},
                                                      {"exit_code", exit_code}}},
                            {"meta", ordered_json{{"tool", kToolName},
                                                  {"version", kVersion},
                                                  {"subcommand", subcommand},
                                                  {"seed", seed}}}};
  // Hash before the volatile fields go in.
  const std::string hash = fnv1a_hex(report.doc.dump());
  report.doc["meta"]["report_hash"] = hash;
  report.doc["meta"]["wall_time_ms"] = wall_time_ms;
  return report;
}

void write_profile_csv(const ScalarProfile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::config_invalid, "cannot write CSV file '" + path + "'");
  }
  out << "r,value\n";
  char line[80];
  for (int i = 0; i < profile.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g\n", profile.r(i), profile[i]);
    out << line;
  }
}

ordered_json make_verdict(const std::string& name, bool pass) {
  return ordered_json{{"name", name}, {"pass", pass}};
}

ordered_json make_verdict(const std::string& name, bool pass, double value) {
  return ordered_json{{"name", name}, {"pass", pass}, {"value", value}};
}

}  // namespace warpest::cli
