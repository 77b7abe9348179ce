#pragma once

// Component counts, area, power and worst-case output noise for the Kelvin
// divider, R-2R ladder and capacitive DAC architectures.

#include <cmath>
#include <cstdint>
#include <string>

#include "cryoctl/errors.hpp"
#include "cryoctl/noise.hpp"
#include "cryoctl/tech.hpp"

namespace cryoctl {

struct ComponentCounts {
  std::int64_t units = 0;
  std::int64_t switches = 0;

  bool operator==(const ComponentCounts&) const = default;
};

/// Kelvin: 2^n resistors, 2^(n+1)-2 switches. Ladder: 3n resistors, 2n
/// switches. Cap: 2·2^(n/2)-1 capacitors (the trimming capacitor counted as
/// one unit), 2n switches; odd n rounds the unit count up.
inline ComponentCounts component_counts(DacArch arch, int n) {
  if (n < 2 || n > 24) throw ValidationError("DAC resolution must be in [2, 24]");
  switch (arch) {
    case DacArch::Kelvin:
      return {std::int64_t{1} << n, (std::int64_t{1} << (n + 1)) - 2};
    case DacArch::Ladder:
      return {3 * n, 2 * n};
    case DacArch::Cap: {
      auto units = static_cast<std::int64_t>(std::ceil(2.0 * std::exp2(0.5 * n) - 1.0 - 1e-9));
      return {units, 2 * n};
    }
  }
  return {};
}

inline bool is_resistive(DacArch a) { return a != DacArch::Cap; }

struct DacDesign {
  DacArch arch = DacArch::Cap;
  int n = 12;
  double unit_value = 10e-15;  // ohms for Kelvin/Ladder, farads for Cap
  ComponentCounts counts{};

  /// Input capacitance seen by the reference (Cap only).
  Farads c_in() const { return arch == DacArch::Cap ? counts.units * unit_value : 0.0; }

  /// Driving-point resistance across the reference: the full string for
  /// Kelvin, R_u for the ladder. Zero for Cap.
  Ohms r_in() const {
    switch (arch) {
      case DacArch::Kelvin: return counts.units * unit_value;
      case DacArch::Ladder: return unit_value;
      case DacArch::Cap: return 0.0;
    }
    return 0.0;
  }
};

/// Builds a design with counts from the closed forms. Unit values below the
/// process minimum are rejected unless `allow_below_minimum` is set.
inline DacDesign make_dac(DacArch arch, int n, double unit_value, const TechnologyParams& tech,
                          bool allow_below_minimum = false) {
  if (!(unit_value > 0.0)) throw ValidationError("DAC unit value must be positive");
  if (!allow_below_minimum) {
    // Tolerate float noise from temperature rescaling.
    const double slack = 1.0 - 1e-12;
    if (is_resistive(arch) && unit_value < tech.r_min * slack)
      throw ValidationError("DAC unit resistance below process minimum r_min");
    if (!is_resistive(arch) && unit_value < tech.c_min * slack)
      throw ValidationError("DAC unit capacitance below process minimum c_min");
  }
  return {arch, n, unit_value, component_counts(arch, n)};
}

inline double unit_value_for(DacArch arch, const DacUnits& u) {
  switch (arch) {
    case DacArch::Kelvin: return u.kelvin_res;
    case DacArch::Ladder: return u.ladder_res;
    case DacArch::Cap: return u.cap;
  }
  return 0.0;
}

inline SquareMicrons dac_area(const DacDesign& d, const TechnologyParams& tech) {
  const double switch_area = static_cast<double>(d.counts.switches) * tech.effective_a_mos();
  const double units = static_cast<double>(d.counts.units);
  if (is_resistive(d.arch)) return units * d.unit_value / tech.rho_r + switch_area;
  return units * d.unit_value / tech.effective_rho_c() + switch_area;
}

/// Reference-side power: static V²/R_in for resistive DACs, dynamic
/// 0.5·f·C_in·V² for the Cap DAC.
inline Watts dac_analog_power(const DacDesign& d, Volts v_range, Hertz f) {
  if (d.arch == DacArch::Cap) {
    if (!(f > 0.0)) throw DomainError("Cap DAC power needs a positive update rate");
    return 0.5 * f * d.c_in() * v_range * v_range;
  }
  return v_range * v_range / d.r_in();
}

inline Watts dac_switch_power(const DacDesign& d, Volts v_dd, Hertz f, double sigma,
                              const TechnologyParams& tech) {
  return sigma * f * v_dd * v_dd * (static_cast<double>(d.counts.switches) * tech.effective_c_mos());
}

/// Worst-case RMS output noise with the design's actual unit values. `b` is
/// ignored for the Cap DAC.
inline Volts dac_output_noise(const DacDesign& d, Kelvin t, Hertz b) {
  switch (d.arch) {
    case DacArch::Cap: return ktc_rms(cap_dac_output_capacitance(d.n, d.unit_value), t);
    case DacArch::Ladder: return johnson_rms(d.unit_value, t, b);
    case DacArch::Kelvin: return johnson_rms(kelvin_worst_output_resistance(d.n, d.unit_value), t, b);
  }
  return 0.0;
}

}  // namespace cryoctl
