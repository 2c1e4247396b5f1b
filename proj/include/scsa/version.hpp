#pragma once

namespace scsa {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace scsa
