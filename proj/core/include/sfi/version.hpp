#pragma once

namespace sfi {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sfi
