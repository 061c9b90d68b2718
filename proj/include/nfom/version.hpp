#pragma once

namespace nfom {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kToolName = "nfom";

}  // namespace nfom
