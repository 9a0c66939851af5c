#pragma once

namespace edgegap {

inline constexpr const char* kVersion = "0.1.0";

} // namespace edgegap
