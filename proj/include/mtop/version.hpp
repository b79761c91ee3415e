#pragma once

namespace mtop {

inline constexpr const char* kVersion = "0.1.0";

} // namespace mtop
