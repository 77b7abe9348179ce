#pragma once

// Sample-and-hold, refresh rate and the bias/RF generation unit rollups.

#include "cryoctl/dac.hpp"
#include "cryoctl/tech.hpp"

namespace cryoctl {

struct SampleHoldDesign {
  int n_channels = 8;
  Farads c_h = 307e-15;
  Ohms r_off = 1e12;
  Ohms r_on = 5e3;
};

/// Area/power of one generation unit.
struct UnitReport {
  SquareMicrons area_um2 = 0.0;
  Watts p_analog = 0.0;
  Watts p_digital = 0.0;

  Watts power() const { return p_analog + p_digital; }
};

/// DAC update rate that keeps leakage through R_off within the pooled charge
/// budget dv·c_out, with c_out = n_bias·C_h by convention.
inline Hertz refresh_rate(Volts v_range, Ohms r_off, int n_bias, Volts dv, Farads c_out) {
  return (v_range / r_off * n_bias) / (dv * c_out);
}

inline SquareMicrons sh_area(const SampleHoldDesign& d, const TechnologyParams& tech) {
  return d.n_channels * d.c_h / tech.effective_rho_c() + d.n_channels * tech.effective_a_mos();
}

/// Power of the periodically charged DAC input and hold capacitors.
inline Watts bias_power_exact(Hertz f_refresh, Farads c_in_dac, Volts v_range, Farads c_sh_total, Volts dv) {
  return 0.5 * f_refresh * (c_in_dac * v_range * v_range + c_sh_total * dv * dv);
}

/// Closed form after substituting the refresh rate and dropping the hold
/// capacitor term; cubic in the bias range.
inline Watts bias_power_approx(int n_bias, Farads c_in_dac, Volts v_range, Ohms r_off, Volts dv,
                               Farads c_sh_total) {
  return n_bias * c_in_dac * v_range * v_range * v_range / (2.0 * r_off * dv * c_sh_total);
}

inline SampleHoldDesign sample_hold_of(const Scenario& s) {
  return {s.spec.n_bias_signals, s.sizing.c_hold, s.tech.effective_r_off(), s.tech.r_on};
}

inline Hertz scenario_refresh_rate(const Scenario& s) {
  return refresh_rate(s.spec.v_range_bias, s.tech.effective_r_off(), s.spec.n_bias_signals, s.spec.dv_bias,
                      s.spec.n_bias_signals * s.sizing.c_hold);
}

/// Bias-side digital clock: explicit, or twice the refresh rate.
inline Hertz bias_clock(const Scenario& s) {
  return s.op.f_clk_bias ? *s.op.f_clk_bias : kClockPerUpdate * scenario_refresh_rate(s);
}

/// RF-side digital clock: explicit, or twice the sample rate.
inline Hertz rf_clock(const Scenario& s) {
  return s.op.f_clk_rf ? *s.op.f_clk_rf : kClockPerUpdate * s.spec.f_sample_rf;
}

inline DacDesign bias_dac_of(const Scenario& s) {
  return make_dac(s.bias_dac_arch, s.spec.n_bias, unit_value_for(s.bias_dac_arch, s.sizing.bias_dac), s.tech);
}

inline DacDesign rf_dac_of(const Scenario& s) {
  return make_dac(s.rf_dac_arch, s.spec.n_rf, unit_value_for(s.rf_dac_arch, s.sizing.rf_dac), s.tech);
}

/// One DAC shared by all bias electrodes through the sample-and-hold. Analog
/// power is the DAC reference power at the refresh rate plus recharging the
/// hold capacitors; the DAC and s&h switches toggle at the bias clock.
inline UnitReport bias_gen_report(const Scenario& s) {
  const DacDesign dac = bias_dac_of(s);
  const SampleHoldDesign sh = sample_hold_of(s);
  const Hertz f_refresh = scenario_refresh_rate(s);
  const Hertz f_clk = bias_clock(s);
  const Farads c_sh_total = sh.n_channels * sh.c_h;

  UnitReport r;
  r.area_um2 = dac_area(dac, s.tech) + sh_area(sh, s.tech);
  if (dac.arch == DacArch::Cap) {
    r.p_analog = bias_power_exact(f_refresh, dac.c_in(), s.spec.v_range_bias, c_sh_total, s.spec.dv_bias);
  } else {
    r.p_analog = dac_analog_power(dac, s.spec.v_range_bias, f_refresh) +
                 bias_power_exact(f_refresh, 0.0, s.spec.v_range_bias, c_sh_total, s.spec.dv_bias);
  }
  const double v2 = s.op.v_dd * s.op.v_dd;
  r.p_digital = dac_switch_power(dac, s.op.v_dd, f_clk, kSwitchActivity, s.tech) +
                kSwitchActivity * f_clk * v2 * sh.n_channels * s.tech.effective_c_mos();
  return r;
}

/// One DAC per RF electrode, updated at the sample rate.
inline UnitReport rf_gen_report(const Scenario& s) {
  const DacDesign dac = rf_dac_of(s);
  const int n_dacs = s.spec.n_rf_signals;
  UnitReport r;
  r.area_um2 = n_dacs * dac_area(dac, s.tech);
  r.p_analog = n_dacs * dac_analog_power(dac, s.spec.v_range_rf, s.spec.f_sample_rf);
  r.p_digital = n_dacs * dac_switch_power(dac, s.op.v_dd, rf_clock(s), kSwitchActivity, s.tech);
  return r;
}

}  // namespace cryoctl
