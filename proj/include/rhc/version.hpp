#pragma once

namespace rhc {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace rhc
