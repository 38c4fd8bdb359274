#pragma once

namespace haardist {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace haardist
