#ifndef WARPEST_TOOLS_COMMANDS_HPP
#define WARPEST_TOOLS_COMMANDS_HPP

#include <cstdint>

#include "config.hpp"
#include "report.hpp"

namespace warpest::cli {

RunReport cmd_solve(const RunConfig& config, std::uint64_t seed);
RunReport cmd_verify(const RunConfig& config, std::uint64_t seed);
RunReport cmd_proofcheck(const RunConfig& config, std::uint64_t seed);
RunReport cmd_nonexist(const RunConfig& config, std::uint64_t seed);
RunReport cmd_example(const RunConfig& config, std::uint64_t seed);
RunReport cmd_sweep(const RunConfig& config, std::uint64_t seed);

}  // namespace warpest::cli

#endif  // WARPEST_TOOLS_COMMANDS_HPP
