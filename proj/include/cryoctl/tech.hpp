#pragma once

// Scenario data model: qubit-side requirements, process constants, operating
// point, analog component sizing and the digital budget allowances. All
// defaults are the 65 nm / 200 mK baseline.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "cryoctl/errors.hpp"
#include "cryoctl/units.hpp"

namespace cryoctl {

enum class MemoryArch { FlipFlop, Sram };
enum class DacArch { Kelvin, Ladder, Cap };
enum class Node { Node65, Node14 };

inline std::string_view to_string(MemoryArch a) {
  return a == MemoryArch::FlipFlop ? "flip_flop" : "sram";
}

inline std::string_view to_string(DacArch a) {
  switch (a) {
    case DacArch::Kelvin: return "kelvin";
    case DacArch::Ladder: return "ladder";
    case DacArch::Cap: return "cap";
  }
  return "?";
}

inline std::string_view to_string(Node n) { return n == Node::Node65 ? "65nm" : "14nm"; }

inline MemoryArch parse_memory_arch(std::string_view s) {
  if (s == "flip_flop" || s == "ff") return MemoryArch::FlipFlop;
  if (s == "sram") return MemoryArch::Sram;
  throw ValidationError("memory_arch must be one of flip_flop|sram, got '" + std::string(s) + "'");
}

inline DacArch parse_dac_arch(std::string_view s) {
  if (s == "kelvin") return DacArch::Kelvin;
  if (s == "ladder") return DacArch::Ladder;
  if (s == "cap") return DacArch::Cap;
  throw ValidationError("dac architecture must be one of kelvin|ladder|cap, got '" + std::string(s) + "'");
}

inline Node parse_node(std::string_view s) {
  if (s == "65nm" || s == "65") return Node::Node65;
  if (s == "14nm" || s == "14") return Node::Node14;
  throw ValidationError("node must be one of 65nm|14nm, got '" + std::string(s) + "'");
}

/// Requirements the qubit places on the electronics.
struct SystemSpec {
  int n_bias_signals = 8;
  Volts v_range_bias = 1.0;
  Volts dv_bias = 3e-6;  // RMS
  int n_bias = 12;
  int n_rf_signals = 2;
  Volts v_range_rf = 4e-3;
  int n_rf = 10;
  Volts dv_rf = 8e-6;  // RMS
  Hertz f_sample_rf = 300e6;
  int l_pulse = 16;
  int n_pulses = 16;

  bool operator==(const SystemSpec&) const = default;
};

/// Process constants plus node scaling factors. The *_scale fields are 1.0 at
/// the 65 nm baseline; use the effective_* accessors in formulas.
struct TechnologyParams {
  double rho_r = 21.4;          // Ω/µm²
  double rho_c = 1.75e-15;      // F/µm²
  SquareMicrons a_mos = 0.375;
  Farads c_mos = 150e-18;
  Ohms r_off = 1e12;
  Ohms r_on = 5e3;
  Ohms r_min = 15.0;
  Farads c_min = 10e-15;
  Volts v_dd = 1.0;             // process nominal supply
  Farads c_ff_equiv = 3.0e-15;  // calibration
  SquareMicrons a_ff = 10.0;
  Farads c_sram_bit = 1.25e-15; // calibration
  SquareMicrons a_sram_cell = 0.5;
  double logic_area_scale = 1.0;
  double sram_area_scale = 1.0;
  double cap_density_scale = 1.0;
  double digital_cap_scale = 1.0;
  double r_off_multiplier = 1.0;

  SquareMicrons effective_a_mos() const { return a_mos * logic_area_scale; }
  SquareMicrons effective_a_ff() const { return a_ff * logic_area_scale; }
  SquareMicrons effective_a_sram_cell() const { return a_sram_cell * sram_area_scale; }
  double effective_rho_c() const { return rho_c * cap_density_scale; }
  Farads effective_c_mos() const { return c_mos * digital_cap_scale; }
  Farads effective_c_ff() const { return c_ff_equiv * digital_cap_scale; }
  Farads effective_c_sram_bit() const { return c_sram_bit * digital_cap_scale; }
  Ohms effective_r_off() const { return r_off * r_off_multiplier; }

  bool operator==(const TechnologyParams&) const = default;
};

/// Scale factors applied when moving from 65 nm to 14 nm.
struct NodeScaling {
  double logic_area_scale = 1.0 / 24.0;
  double sram_area_scale = 1.0 / 7.0;
  double cap_density_scale = 200.0;  // trench capacitors
  double digital_cap_scale = 0.7;    // calibrated against the 14 nm digital power entries
};

/// Returns `tech` moved to `node`. Node65 is the identity.
inline TechnologyParams apply_node(TechnologyParams tech, Node node,
                                   const NodeScaling& scaling = {}) {
  if (node == Node::Node65) return tech;
  tech.logic_area_scale = scaling.logic_area_scale;
  tech.sram_area_scale = scaling.sram_area_scale;
  tech.cap_density_scale = scaling.cap_density_scale;
  tech.digital_cap_scale = scaling.digital_cap_scale;
  return tech;
}

struct OperatingPoint {
  Kelvin t_el = 0.2;
  Volts v_dd = 1.0;
  // Empty means derived: twice the bias refresh rate / RF sample rate.
  std::optional<Hertz> f_clk_bias = 2.22e6;
  std::optional<Hertz> f_clk_rf = 600e6;
  Hertz b_bias = 10e6;
  Hertz b_rf = 600e6;
  double sigma_biasmem = 0.306;
  double sigma_rfmem = 0.026;
  double sigma_con = 0.5;

  bool operator==(const OperatingPoint&) const = default;
};

/// Unit element values for one DAC; which one is used depends on the
/// architecture.
struct DacUnits {
  Farads cap = 10e-15;
  Ohms kelvin_res = 15.0;
  Ohms ladder_res = 150.0;

  bool operator==(const DacUnits&) const = default;
};

struct AnalogSizing {
  Farads c_hold = 307e-15;
  DacUnits bias_dac{};
  DacUnits rf_dac{};

  bool operator==(const AnalogSizing&) const = default;
};

/// Calibration data for the managing component and memory periphery. The
/// flip-flop counts themselves are derived from the controller structures;
/// these are the combinational allowances added on top.
struct BudgetAllowances {
  double data_input_control_logic = 3000;
  double clock_control_logic = 0;
  double bias_control_logic = 20;
  double rf_control_logic = 20;
  double mux_periphery_logic_ff = 490;    // select drivers, flip-flop memory
  double mux_periphery_logic_sram = 0;    // select drivers, SRAM memory
  double sram_periphery_transistors = 3400;
  double latch_ff_fraction = 0.5;         // a latch counted as this many flip-flops

  bool operator==(const BudgetAllowances&) const = default;
};

struct Scenario {
  std::string name = "paper-defaults";
  SystemSpec spec{};
  TechnologyParams tech{};
  OperatingPoint op{};
  AnalogSizing sizing{};
  MemoryArch memory_arch = MemoryArch::FlipFlop;
  DacArch bias_dac_arch = DacArch::Cap;
  DacArch rf_dac_arch = DacArch::Cap;
  BudgetAllowances budget{};

  bool operator==(const Scenario&) const = default;
};

namespace detail {

inline void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(name) + " must be positive");
}

inline void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(std::string(name) + " must be non-negative");
}

inline bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

inline void require_sigma(double v, const char* name) {
  if (!(v > 0.0 && v <= 0.5)) throw ValidationError(std::string(name) + " must be in (0, 0.5]");
}

}  // namespace detail

inline void validate(const SystemSpec& s) {
  using detail::require_positive;
  if (s.n_bias_signals < 1) throw ValidationError("n_bias_signals must be positive");
  if (s.n_rf_signals < 1) throw ValidationError("n_rf_signals must be positive");
  require_positive(s.v_range_bias, "v_range_bias");
  require_positive(s.dv_bias, "dv_bias");
  require_positive(s.v_range_rf, "v_range_rf");
  require_positive(s.dv_rf, "dv_rf");
  require_positive(s.f_sample_rf, "f_sample_rf");
  if (s.n_bias < 1 || s.n_bias > 24) throw ValidationError("n_bias must be in [1, 24]");
  if (s.n_rf < 1 || s.n_rf > 24) throw ValidationError("n_rf must be in [1, 24]");
  if (!detail::is_power_of_two(s.l_pulse)) throw ValidationError("l_pulse must be a positive power of two");
  if (!detail::is_power_of_two(s.n_pulses)) throw ValidationError("n_pulses must be a positive power of two");
}

inline void validate(const TechnologyParams& t) {
  using detail::require_positive;
  require_positive(t.rho_r, "rho_r");
  require_positive(t.rho_c, "rho_c");
  require_positive(t.a_mos, "a_mos");
  require_positive(t.c_mos, "c_mos");
  require_positive(t.r_off, "r_off");
  require_positive(t.r_on, "r_on");
  require_positive(t.r_min, "r_min");
  require_positive(t.c_min, "c_min");
  require_positive(t.v_dd, "v_dd");
  require_positive(t.c_ff_equiv, "c_ff_equiv");
  require_positive(t.a_ff, "a_ff");
  require_positive(t.c_sram_bit, "c_sram_bit");
  require_positive(t.a_sram_cell, "a_sram_cell");
  require_positive(t.logic_area_scale, "logic_area_scale");
  require_positive(t.sram_area_scale, "sram_area_scale");
  require_positive(t.cap_density_scale, "cap_density_scale");
  require_positive(t.digital_cap_scale, "digital_cap_scale");
  require_positive(t.r_off_multiplier, "r_off_multiplier");
}

inline void validate(const OperatingPoint& op) {
  using detail::require_positive;
  require_positive(op.t_el, "t_el");
  require_positive(op.v_dd, "v_dd");
  if (op.f_clk_bias) require_positive(*op.f_clk_bias, "f_clk_bias");
  if (op.f_clk_rf) require_positive(*op.f_clk_rf, "f_clk_rf");
  require_positive(op.b_bias, "b_bias");
  require_positive(op.b_rf, "b_rf");
  detail::require_sigma(op.sigma_biasmem, "sigma_biasmem");
  detail::require_sigma(op.sigma_rfmem, "sigma_rfmem");
  detail::require_sigma(op.sigma_con, "sigma_con");
}

inline void validate(const AnalogSizing& a) {
  using detail::require_positive;
  require_positive(a.c_hold, "c_hold");
  require_positive(a.bias_dac.cap, "bias_dac.cap");
  require_positive(a.bias_dac.kelvin_res, "bias_dac.kelvin_res");
  require_positive(a.bias_dac.ladder_res, "bias_dac.ladder_res");
  require_positive(a.rf_dac.cap, "rf_dac.cap");
  require_positive(a.rf_dac.kelvin_res, "rf_dac.kelvin_res");
  require_positive(a.rf_dac.ladder_res, "rf_dac.ladder_res");
}

inline void validate(const BudgetAllowances& b) {
  using detail::require_non_negative;
  require_non_negative(b.data_input_control_logic, "data_input_control_logic");
  require_non_negative(b.clock_control_logic, "clock_control_logic");
  require_non_negative(b.bias_control_logic, "bias_control_logic");
  require_non_negative(b.rf_control_logic, "rf_control_logic");
  require_non_negative(b.mux_periphery_logic_ff, "mux_periphery_logic_ff");
  require_non_negative(b.mux_periphery_logic_sram, "mux_periphery_logic_sram");
  require_non_negative(b.sram_periphery_transistors, "sram_periphery_transistors");
  require_non_negative(b.latch_ff_fraction, "latch_ff_fraction");
}

inline void validate(const Scenario& s) {
  validate(s.spec);
  validate(s.tech);
  validate(s.op);
  validate(s.sizing);
  validate(s.budget);
}

}  // namespace cryoctl
