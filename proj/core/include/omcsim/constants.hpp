// constants.hpp — physical constants and shared numeric limits
#pragma once

#include <numbers>

namespace omcsim {

inline constexpr double kPlanck = 6.62607015e-34;  // J s, exact (SI 2019)
inline constexpr double kHbar = kPlanck / (2.0 * std::numbers::pi);
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact

// sideband solves beyond this condition number are treated as degenerate
inline constexpr double kConditionLimit = 1e12;

}  // namespace omcsim
