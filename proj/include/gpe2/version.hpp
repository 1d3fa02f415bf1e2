#pragma once

namespace gpe2 {

inline constexpr const char* kVersion = "0.1.0";

} // namespace gpe2
