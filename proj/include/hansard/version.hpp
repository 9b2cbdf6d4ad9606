#pragma once

namespace hansard {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "hansard";

}  // namespace hansard
