#pragma once

// Physical constants and unit aliases. Every quantity in the library is SI
// (volts, ohms, farads, hertz, kelvin, watts) except areas, which are in µm².

namespace cryoctl {

using Volts = double;
using Ohms = double;
using Farads = double;
using Hertz = double;
using Kelvin = double;
using Watts = double;
using Seconds = double;
using SquareMicrons = double;

/// Boltzmann constant, exact SI value (J/K).
inline constexpr double kBoltzmann = 1.380649e-23;

/// Activity of a simple clocked switch; also the maximum for edge-triggered logic.
inline constexpr double kSwitchActivity = 0.5;

/// Digital clocks run at twice the analog update rate of the unit they serve,
/// because the logic is edge triggered.
inline constexpr double kClockPerUpdate = 2.0;

}  // namespace cryoctl
