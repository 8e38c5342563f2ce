#pragma once

namespace quench {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace quench
