#pragma once

namespace gapforge {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gapforge
