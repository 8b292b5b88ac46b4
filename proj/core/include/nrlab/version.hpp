#pragma once

namespace nrlab {
inline constexpr const char *kVersion = "nrlab 0.1.0";
}
