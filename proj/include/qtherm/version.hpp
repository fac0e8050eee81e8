#pragma once

namespace qtherm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qtherm
