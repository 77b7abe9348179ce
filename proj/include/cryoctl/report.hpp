#pragma once

// System-level rollup: per-unit reports, totals, parameter sweeps, cooling
// budget capacity and sizing-bound tables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cryoctl/analog_chain.hpp"
#include "cryoctl/dac.hpp"
#include "cryoctl/digital.hpp"
#include "cryoctl/noise.hpp"
#include "cryoctl/tech.hpp"
#include "cryoctl/temperature.hpp"

namespace cryoctl {

struct Report {
  Scenario scenario;
  bool include_data_input = false;

  UnitReport bias_gen;
  UnitReport rf_gen;
  AreaPower memory;
  AreaPower managing;

  SquareMicrons total_area_um2 = 0.0;
  Watts total_power_w = 0.0;

  Hertz f_refresh = 0.0;
  Hertz f_clk_bias = 0.0;
  Hertz f_clk_rf = 0.0;

  Volts bias_dac_noise = 0.0;
  Volts rf_dac_noise = 0.0;
  Volts hold_noise = 0.0;  // pooled kT/C over all hold capacitors

  std::vector<std::string> notes;

  /// Power of memory, managing component and all DAC/s&h switches.
  Watts digital_power_w() const {
    return memory.power_w + managing.power_w + bias_gen.p_digital + rf_gen.p_digital;
  }
};

namespace detail {
inline std::string sci(double v, int digits = 3) {
  std::ostringstream ss;
  ss.precision(digits);
  ss << std::scientific << v;
  return ss.str();
}
}  // namespace detail

inline Report assemble(const Scenario& s, bool include_data_input = false) {
  validate(s);
  Report r;
  r.scenario = s;
  r.include_data_input = include_data_input;
  r.bias_gen = bias_gen_report(s);
  r.rf_gen = rf_gen_report(s);
  r.memory = memory_report(memory_design_of(s), s);
  r.managing = managing_report(s, include_data_input);
  r.total_area_um2 = r.bias_gen.area_um2 + r.rf_gen.area_um2 + r.memory.area_um2 + r.managing.area_um2;
  r.total_power_w = r.bias_gen.power() + r.rf_gen.power() + r.memory.power_w + r.managing.power_w;
  r.f_refresh = scenario_refresh_rate(s);
  r.f_clk_bias = bias_clock(s);
  r.f_clk_rf = rf_clock(s);

  const DacDesign bias_dac = bias_dac_of(s);
  const DacDesign rf_dac = rf_dac_of(s);
  r.bias_dac_noise = dac_output_noise(bias_dac, s.op.t_el, s.op.b_bias);
  r.rf_dac_noise = dac_output_noise(rf_dac, s.op.t_el, s.op.b_rf);
  r.hold_noise = ktc_rms(s.spec.n_bias_signals * s.sizing.c_hold, s.op.t_el);

  if (r.bias_dac_noise > s.spec.dv_bias)
    r.notes.push_back("bias DAC output noise " + detail::sci(r.bias_dac_noise) + " V exceeds dv_bias");
  if (r.rf_dac_noise > s.spec.dv_rf)
    r.notes.push_back("RF DAC output noise " + detail::sci(r.rf_dac_noise) + " V exceeds dv_rf");
  if (r.hold_noise > s.spec.dv_bias)
    r.notes.push_back("hold capacitor kT/C noise " + detail::sci(r.hold_noise) + " V exceeds dv_bias");
  r.notes.push_back("analog terms are closed-form; memory and managing figures rest on calibrated budgets "
                    "(flip-flop/SRAM bit capacitance, logic allowances)");
  if (!include_data_input) r.notes.push_back("data input control power excluded (idle during qubit operation)");
  return r;
}

// ---------------------------------------------------------------------------
// Capacity

struct CapacityResult {
  Watts budget_w = 0.0;
  Watts per_qubit_w = 0.0;
  std::uint64_t n_qubits = 0;
};

inline CapacityResult qubit_capacity(Watts per_qubit_w, Watts budget_w) {
  if (!(budget_w > 0.0)) throw ValidationError("cooling budget must be positive");
  if (!(per_qubit_w > 0.0)) throw ValidationError("per-qubit dissipation must be positive");
  return {budget_w, per_qubit_w, static_cast<std::uint64_t>(std::floor(budget_w / per_qubit_w))};
}

inline CapacityResult qubit_capacity(const Report& r, Watts budget_w) {
  return qubit_capacity(r.total_power_w, budget_w);
}

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepParam { NBias, NRf, VDd };

inline std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::NBias: return "n_bias";
    case SweepParam::NRf: return "n_rf";
    case SweepParam::VDd: return "v_dd";
  }
  return "?";
}

inline SweepParam parse_sweep_param(std::string_view s) {
  if (s == "n_bias") return SweepParam::NBias;
  if (s == "n_rf") return SweepParam::NRf;
  if (s == "v_dd") return SweepParam::VDd;
  throw ValidationError("sweep parameter must be one of n_bias|n_rf|v_dd, got '" + std::string(s) + "'");
}

struct SweepRow {
  double value = 0.0;
  std::optional<Report> report;  // empty when the row is invalid
  std::string error;
};

inline Scenario with_param(Scenario s, SweepParam p, double value) {
  auto as_bits = [&](double v) {
    if (v != std::floor(v)) throw ValidationError("resolution must be an integer number of bits");
    return static_cast<int>(v);
  };
  switch (p) {
    case SweepParam::NBias: s.spec.n_bias = as_bits(value); break;
    case SweepParam::NRf: s.spec.n_rf = as_bits(value); break;
    case SweepParam::VDd: s.op.v_dd = value; break;
  }
  return s;
}

inline SweepRow sweep_point(const Scenario& base, SweepParam p, double value, bool include_data_input) {
  SweepRow row;
  row.value = value;
  try {
    row.report = assemble(with_param(base, p, value), include_data_input);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

/// One row per value, sorted by value. Rows are independent and evaluated on
/// up to `threads` workers; failures mark the row instead of aborting.
inline std::vector<SweepRow> sweep(const Scenario& base, SweepParam p, std::vector<double> values,
                                   bool include_data_input = false, unsigned threads = 0) {
  std::sort(values.begin(), values.end());
  std::vector<SweepRow> rows(values.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, values.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < values.size(); i += threads)
        rows[i] = sweep_point(base, p, values[i], include_data_input);
    });
  }
  for (auto& t : pool) t.join();
  return rows;
}

/// True when the bias generation unit draws more power than each other unit.
inline bool bias_gen_dominates(const Report& r) {
  const double b = r.bias_gen.power();
  return b > r.rf_gen.power() && b > r.memory.power_w && b > r.managing.power_w;
}

/// Supply voltage below which the bias generation unit is the largest
/// consumer, found by bisection on [lo, hi]. Requires dominance at `lo` and
/// none at `hi`.
inline Volts bias_dominance_crossover(const Scenario& s, Volts lo = 1e-3, Volts hi = 1.0, double tol = 1e-6) {
  auto dominates = [&](Volts v) { return bias_gen_dominates(assemble(with_param(s, SweepParam::VDd, v))); };
  if (!dominates(lo) || dominates(hi)) throw DomainError("no bias-dominance crossover inside the supply interval");
  while (hi - lo > tol) {
    const Volts mid = 0.5 * (lo + hi);
    (dominates(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// DAC comparison

struct DacConditions {
  Volts v_range = 1.0;
  Hertz f = 1.0e6;  // update rate; also clocks the switches
  Volts v_dd = 1.0;
  double sigma = kSwitchActivity;
  Kelvin t = 0.2;
  Hertz b = 10e6;
  DacUnits units{};
};

inline DacConditions bias_conditions(const Scenario& s) {
  return {s.spec.v_range_bias, scenario_refresh_rate(s), s.op.v_dd, kSwitchActivity, s.op.t_el, s.op.b_bias,
          s.sizing.bias_dac};
}

inline DacConditions rf_conditions(const Scenario& s) {
  return {s.spec.v_range_rf, s.spec.f_sample_rf, s.op.v_dd, kSwitchActivity, s.op.t_el, s.op.b_rf,
          s.sizing.rf_dac};
}

struct DacSweepRow {
  DacArch arch;
  int n;
  SquareMicrons area_um2;
  Watts p_analog_w;
  Watts p_switch_w;
  Volts noise_vrms;

  Watts total_power() const { return p_analog_w + p_switch_w; }
};

inline DacSweepRow evaluate_dac(DacArch arch, int n, const DacConditions& c, const TechnologyParams& tech) {
  const DacDesign d = make_dac(arch, n, unit_value_for(arch, c.units), tech, true);
  return {arch,
          n,
          dac_area(d, tech),
          dac_analog_power(d, c.v_range, c.f),
          dac_switch_power(d, c.v_dd, c.f, c.sigma, tech),
          dac_output_noise(d, c.t, c.b)};
}

inline std::vector<DacSweepRow> dac_sweep(const DacConditions& c, const TechnologyParams& tech, int n_min,
                                          int n_max) {
  std::vector<DacSweepRow> rows;
  for (DacArch a : {DacArch::Kelvin, DacArch::Ladder, DacArch::Cap})
    for (int n = n_min; n <= n_max; ++n) rows.push_back(evaluate_dac(a, n, c, tech));
  return rows;
}

// ---------------------------------------------------------------------------
// Sizing bounds

struct NamedBound {
  std::string name;
  SizingBound bound;
  double design_value;  // the value actually used by the scenario
  bool satisfied;
};

inline std::vector<NamedBound> sizing_bounds(const Scenario& s) {
  const auto& sp = s.spec;
  const auto& op = s.op;
  const auto& z = s.sizing;
  std::vector<NamedBound> out;
  auto cap = [&](std::string name, SizingBound b, double used) {
    out.push_back({std::move(name), b, used, used >= b.value});
  };
  auto res = [&](std::string name, SizingBound b, double used) {
    out.push_back({std::move(name), b, used, used <= b.value});
  };
  cap("bias_cap_unit_min", min_unit_cap(sp.n_bias, sp.dv_bias, op.t_el), z.bias_dac.cap);
  cap("hold_cap_min", min_hold_cap(sp.n_bias_signals, sp.dv_bias, op.t_el), z.c_hold);
  res("bias_ladder_unit_max", max_unit_res(DacArch::Ladder, sp.n_bias, sp.dv_bias, op.t_el, op.b_bias),
      z.bias_dac.ladder_res);
  res("bias_kelvin_unit_max", max_unit_res(DacArch::Kelvin, sp.n_bias, sp.dv_bias, op.t_el, op.b_bias),
      z.bias_dac.kelvin_res);
  cap("rf_cap_unit_min", min_unit_cap(sp.n_rf, sp.dv_rf, op.t_el), z.rf_dac.cap);
  res("rf_ladder_unit_max", max_unit_res(DacArch::Ladder, sp.n_rf, sp.dv_rf, op.t_el, op.b_rf),
      z.rf_dac.ladder_res);
  res("rf_kelvin_unit_max", max_unit_res(DacArch::Kelvin, sp.n_rf, sp.dv_rf, op.t_el, op.b_rf),
      z.rf_dac.kelvin_res);
  return out;
}

}  // namespace cryoctl
