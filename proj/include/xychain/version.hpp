#pragma once

namespace xychain {

inline constexpr const char* kVersion = "1.0.0";

}
