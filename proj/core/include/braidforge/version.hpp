#pragma once

namespace braidforge {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace braidforge
