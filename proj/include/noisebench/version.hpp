#pragma once

namespace noisebench {

inline constexpr const char* kToolVersion = "noisebench 1.0.0";

} // namespace noisebench
