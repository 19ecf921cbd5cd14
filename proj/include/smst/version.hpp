#pragma once

namespace smst {

inline constexpr const char* kVersion = "smst 0.1.0";

}  // namespace smst
