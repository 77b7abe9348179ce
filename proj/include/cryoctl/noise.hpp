#pragma once

// Thermal noise (kT/C and Johnson-Nyquist) and the component sizing bounds
// they impose on DAC unit elements and hold capacitors.

#include <cmath>
#include <string>

#include "cryoctl/errors.hpp"
#include "cryoctl/tech.hpp"
#include "cryoctl/units.hpp"

namespace cryoctl {

enum class BoundKind { MinCapacitance, MaxResistance };

/// What produced a bound; echoed in reports.
struct BindingSpec {
  int n = 0;           // resolution in bits (0 when not applicable)
  int channels = 0;    // pooled hold capacitors (0 when not applicable)
  Volts dv = 0.0;
  Kelvin t = 0.0;
  Hertz b = 0.0;       // 0 for kT/C bounds
};

struct SizingBound {
  BoundKind kind;
  double value;  // farads or ohms
  BindingSpec binding;
};

namespace detail {
inline void require_domain(double v, const char* what) {
  if (!(v > 0.0)) throw DomainError(std::string(what) + " must be positive");
}
}  // namespace detail

/// RMS kT/C noise on capacitance `c` at temperature `t`.
inline Volts ktc_rms(Farads c, Kelvin t) {
  detail::require_domain(c, "capacitance");
  detail::require_domain(t, "temperature");
  if (std::isinf(c)) return 0.0;
  return std::sqrt(kBoltzmann * t / c);
}

/// RMS Johnson-Nyquist noise of resistance `r` over bandwidth `b`.
inline Volts johnson_rms(Ohms r, Kelvin t, Hertz b) {
  detail::require_domain(r, "resistance");
  detail::require_domain(t, "temperature");
  detail::require_domain(b, "bandwidth");
  return std::sqrt(4.0 * kBoltzmann * t * r * b);
}

/// Output capacitance of a capacitive DAC, 2^(n/2)·C_u. Odd n uses the
/// real-valued power.
inline Farads cap_dac_output_capacitance(int n, Farads unit_c) {
  return std::exp2(0.5 * n) * unit_c;
}

/// Worst-case Kelvin divider output resistance, 2^(n-2)·R_u.
inline Ohms kelvin_worst_output_resistance(int n, Ohms unit_r) {
  return std::exp2(n - 2) * unit_r;
}

/// Smallest Cap-DAC unit capacitor whose kT/C noise stays within `dv`.
inline SizingBound min_unit_cap(int n, Volts dv, Kelvin t) {
  if (n < 2) throw DomainError("resolution must be at least 2 bits");
  detail::require_domain(dv, "dv");
  detail::require_domain(t, "temperature");
  return {BoundKind::MinCapacitance, kBoltzmann * t / (std::exp2(0.5 * n) * dv * dv), {n, 0, dv, t, 0.0}};
}

/// Largest unit resistor for resistive DACs. Only Kelvin and Ladder have a
/// resistive bound.
inline SizingBound max_unit_res(DacArch arch, int n, Volts dv, Kelvin t, Hertz b) {
  if (arch == DacArch::Cap) throw DomainError("the Cap architecture has no resistive noise bound");
  if (n < 2) throw DomainError("resolution must be at least 2 bits");
  detail::require_domain(dv, "dv");
  detail::require_domain(t, "temperature");
  detail::require_domain(b, "bandwidth");
  double ladder = dv * dv / (4.0 * kBoltzmann * t * b);
  double value = arch == DacArch::Ladder ? ladder : ladder / std::exp2(n - 2);
  return {BoundKind::MaxResistance, value, {n, 0, dv, t, b}};
}

/// Smallest hold capacitor when the kT/C noise is pooled over `n_bias` caps.
inline SizingBound min_hold_cap(int n_bias, Volts dv, Kelvin t) {
  if (n_bias < 1) throw DomainError("n_bias must be at least 1");
  detail::require_domain(dv, "dv");
  detail::require_domain(t, "temperature");
  return {BoundKind::MinCapacitance, kBoltzmann * t / (n_bias * dv * dv), {0, n_bias, dv, t, 0.0}};
}

}  // namespace cryoctl
