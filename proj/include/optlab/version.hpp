#pragma once

namespace optlab {

inline constexpr const char* kSoftwareVersion = "0.1.0";

} // namespace optlab
