#ifndef WARPEST_VERSION_HPP
#define WARPEST_VERSION_HPP

namespace warpest {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "warpest";

}  // namespace warpest

#endif  // WARPEST_VERSION_HPP
