#pragma once

namespace envlab {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace envlab
