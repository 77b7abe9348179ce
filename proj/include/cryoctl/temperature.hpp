#pragma once

#include <algorithm>

#include "cryoctl/noise.hpp"
#include "cryoctl/tech.hpp"

namespace cryoctl {

/// Re-sizes the noise-limited analog components for electronics temperature
/// `t_el`.
///
/// Bias path (hold capacitors and bias DAC units) keeps its margin above the
/// noise bound: capacitors scale by t_el/t_old, resistors by t_old/t_el, never
/// below the process minimums. The RF DAC units were chosen at the process
/// minimum rather than with a noise margin, so they are only moved to their
/// noise bound when the new temperature violates it. An explicit bias clock
/// follows the refresh rate, which is inversely proportional to C_h.
inline Scenario temperature_adjust(Scenario s, Kelvin t_el) {
  detail::require_domain(t_el, "t_el");
  const Kelvin t_old = s.op.t_el;
  if (t_el == t_old) return s;
  const double ratio = t_el / t_old;
  const auto& tech = s.tech;

  const Farads old_hold = s.sizing.c_hold;
  s.sizing.c_hold = std::max(tech.c_min, old_hold * ratio);

  auto& bias = s.sizing.bias_dac;
  bias.cap = std::max(tech.c_min, bias.cap * ratio);
  bias.kelvin_res = std::max(tech.r_min, bias.kelvin_res / ratio);
  bias.ladder_res = std::max(tech.r_min, bias.ladder_res / ratio);

  auto& rf = s.sizing.rf_dac;
  const auto& spec = s.spec;
  rf.cap = std::max(rf.cap, min_unit_cap(std::max(spec.n_rf, 2), spec.dv_rf, t_el).value);
  rf.kelvin_res = std::max(
      tech.r_min,
      std::min(rf.kelvin_res, max_unit_res(DacArch::Kelvin, std::max(spec.n_rf, 2), spec.dv_rf, t_el, s.op.b_rf).value));
  rf.ladder_res = std::max(
      tech.r_min,
      std::min(rf.ladder_res, max_unit_res(DacArch::Ladder, std::max(spec.n_rf, 2), spec.dv_rf, t_el, s.op.b_rf).value));

  if (s.op.f_clk_bias) *s.op.f_clk_bias *= old_hold / s.sizing.c_hold;
  s.op.t_el = t_el;
  return s;
}

}  // namespace cryoctl
