#pragma once

// Physical and mathematical constants used throughout the simulator.
// SI defining constants (2019 revision), exact by definition.

namespace strobe {

inline constexpr double HBAR = 1.054571817e-34;  // reduced Planck constant, J*s
inline constexpr double KB = 1.380649e-23;       // Boltzmann constant, J/K

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline constexpr double SQRT2 = 1.414213562373095048801688724209698079;

}  // namespace strobe
