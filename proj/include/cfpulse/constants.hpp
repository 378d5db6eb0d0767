#pragma once

// Physical constants (CODATA 2018 exact values where defined) and shared
// numeric conventions for the toolkit.

#include <numbers>

namespace cfpulse::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Elementary charge [C]
inline constexpr double e_charge = 1.602176634e-19;

/// Planck constant [J s]
inline constexpr double h_planck = 6.62607015e-34;

/// Magnetic flux quantum h/(2e) [Wb]
inline constexpr double phi0 = h_planck / (2.0 * e_charge);

} // namespace cfpulse::constants
