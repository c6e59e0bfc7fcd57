#pragma once

namespace qsep {

inline constexpr const char* kToolName = "qsep";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace qsep
