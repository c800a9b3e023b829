#pragma once

namespace prop {
inline constexpr const char* kVersion = "0.1.0";
}
