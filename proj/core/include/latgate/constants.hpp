#pragma once

#include <numbers>

namespace latgate::constants {

// SI exact values; hbar follows from h so that h = 2 pi hbar holds to rounding.
inline constexpr double h = 6.62607015e-34;                       // J s
inline constexpr double hbar = h / (2.0 * std::numbers::pi);     // J s
inline constexpr double c = 299792458.0;         // m/s

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace latgate::constants
