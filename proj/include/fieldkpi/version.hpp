#pragma once

namespace fieldkpi {

inline constexpr const char* kToolName = "fieldkpi";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace fieldkpi
