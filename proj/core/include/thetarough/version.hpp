#pragma once

namespace thetarough {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace thetarough
