#pragma once

#include <cstdint>

namespace gpttomo {

// Numerical tolerances. Dimensions in this library stay small (<= ~136),
// so conditioning is benign and fixed absolute tolerances suffice.
inline constexpr double kTolRank = 1e-10;  // rank / span decisions
inline constexpr double kTolNum = 1e-9;    // matrix and vector identities
inline constexpr double kTolPsd = 1e-9;    // eigenvalue nonnegativity
inline constexpr double kTolLp = 1e-8;     // LP feasibility

// Default seed for randomized protocol suites ("GPT1" as ASCII bytes).
inline constexpr std::uint64_t kDefaultSeed = 0x47505431ULL;

inline constexpr const char* kSchemaVersion = "gpt-tomo/1";

}  // namespace gpttomo
