#pragma once

namespace levyharm {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kFileFormatVersion = 1;

// Pinned Monte Carlo RNG identity; any change to the sampling algorithms must
// bump this string (reports embed it for reproducibility).
inline constexpr const char* kRngId = "mt19937_64/polar-normal/knuth-poisson v1";

}  // namespace levyharm
