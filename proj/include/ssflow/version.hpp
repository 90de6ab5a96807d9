#pragma once

namespace ssflow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ssflow
