#pragma once

namespace tsdec {

inline constexpr const char* kVersion = "tsdec 0.1.0";

}  // namespace tsdec
