#pragma once

namespace speckit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace speckit
