#pragma once

namespace formsum {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace formsum
