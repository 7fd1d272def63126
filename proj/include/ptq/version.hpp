#pragma once

namespace ptq {
inline constexpr const char* kVersion = "1.0.0";
}
