#pragma once

// Area and switching power of the memories and the managing component,
// built from flip-flop and transistor budgets.

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>

#include "cryoctl/analog_chain.hpp"
#include "cryoctl/tech.hpp"

namespace cryoctl {

/// Dynamic power σ·f·V²·C.
inline Watts switching_power(Farads c_gate, Hertz f, Volts v_dd, double sigma) {
  return sigma * f * v_dd * v_dd * c_gate;
}

struct MemoryDesign {
  MemoryArch arch = MemoryArch::FlipFlop;
  int bias_registers = 9;
  int bias_width = 12;
  int rf_registers = 256;
  int rf_width = 10;
  int rf_read_ports = 2;

  int bias_bits() const { return bias_registers * bias_width; }
  int rf_bits() const { return rf_registers * rf_width; }
  int total_bits() const { return bias_bits() + rf_bits(); }
};

/// One register per bias electrode plus the ramp-target register; one RF
/// register per stored sample.
inline MemoryDesign memory_design_of(const Scenario& s) {
  return {s.memory_arch, s.spec.n_bias_signals + 1, s.spec.n_bias, s.spec.n_pulses * s.spec.l_pulse,
          s.spec.n_rf, 2};
}

/// Pass-transistor tree for a `ways`-to-1 selector of `width` bits:
/// (2^(k+1)-2)·width with k = ceil(log2 ways).
inline double selector_transistors(int ways, int width) {
  int k = 0;
  while ((1 << k) < ways) ++k;
  return static_cast<double>((1 << (k + 1)) - 2) * width;
}

/// Read MUXes (one per read port) and the single-bit write DEMUX of both
/// memory parts.
inline double mux_tree_transistors(const MemoryDesign& m) {
  return selector_transistors(m.bias_registers, m.bias_width) + selector_transistors(m.bias_registers, 1) +
         m.rf_read_ports * selector_transistors(m.rf_registers, m.rf_width) +
         selector_transistors(m.rf_registers, 1);
}

struct AreaPower {
  SquareMicrons area_um2 = 0.0;
  Watts power_w = 0.0;
};

inline AreaPower memory_report(const MemoryDesign& m, const Scenario& s) {
  const auto& tech = s.tech;
  AreaPower r;
  Farads c_bit;
  if (m.arch == MemoryArch::FlipFlop) {
    r.area_um2 = m.total_bits() * tech.effective_a_ff() + mux_tree_transistors(m) * tech.effective_a_mos();
    c_bit = tech.effective_c_ff();
  } else {
    r.area_um2 = m.total_bits() * tech.effective_a_sram_cell() +
                 s.budget.sram_periphery_transistors * tech.effective_a_mos();
    c_bit = tech.effective_c_sram_bit();
  }
  r.power_w = switching_power(m.bias_bits() * c_bit, bias_clock(s), s.op.v_dd, s.op.sigma_biasmem) +
              switching_power(m.rf_bits() * c_bit, rf_clock(s), s.op.v_dd, s.op.sigma_rfmem);
  return r;
}

enum class Subunit { DataInputControl, ClockControl, BiasControl, RfControl, MuxPeriphery };
enum class ClockDomain { Bias, Rf };

inline constexpr std::array<Subunit, 5> kSubunits{Subunit::DataInputControl, Subunit::ClockControl,
                                                  Subunit::BiasControl, Subunit::RfControl,
                                                  Subunit::MuxPeriphery};

inline std::string_view to_string(Subunit u) {
  switch (u) {
    case Subunit::DataInputControl: return "data_input_control";
    case Subunit::ClockControl: return "clock_control";
    case Subunit::BiasControl: return "bias_control";
    case Subunit::RfControl: return "rf_control";
    case Subunit::MuxPeriphery: return "mux_periphery";
  }
  return "?";
}

struct SubunitBudget {
  double ff_count = 0;           // flip-flop equivalents
  double logic_transistors = 0;
  ClockDomain clock = ClockDomain::Rf;
};

struct DigitalBudget {
  std::array<SubunitBudget, kSubunits.size()> units{};

  SubunitBudget& operator[](Subunit u) { return units[static_cast<std::size_t>(u)]; }
  const SubunitBudget& operator[](Subunit u) const { return units[static_cast<std::size_t>(u)]; }
};

/// Flip-flop counts follow the controller structures; the combinational
/// allowances come from the budget data.
///  - data input: shift register of the longest word, 5-bit reception counter
///  - clock control: two inverters per routed clock (bias, RF, data input)
///  - bias control: 4-bit electrode counter, ramp counter, ramp_config
///  - rf control: 16 staging flip-flops, 5-bit reception counter, 4-bit sample
///    counter, set select, end_sequ, and a 16-bit latch array
inline DigitalBudget derive_budget(const Scenario& s) {
  const auto& spec = s.spec;
  const auto& a = s.budget;
  DigitalBudget b;
  constexpr int kHeaderTypeAddressBits = 10;
  constexpr int kReceptionCounterBits = 5;
  constexpr int kRoutedClocks = 3;

  b[Subunit::DataInputControl] = {
      double(kHeaderTypeAddressBits + std::max(spec.n_bias, spec.n_rf) + kReceptionCounterBits),
      a.data_input_control_logic, ClockDomain::Rf};
  b[Subunit::ClockControl] = {0.0, kRoutedClocks * 2 * 2 + a.clock_control_logic, ClockDomain::Rf};
  b[Subunit::BiasControl] = {double(4 + spec.n_bias + 1), a.bias_control_logic, ClockDomain::Bias};
  b[Subunit::RfControl] = {16 + kReceptionCounterBits + 4 + 1 + 1 + 16 * a.latch_ff_fraction, a.rf_control_logic,
                           ClockDomain::Rf};
  b[Subunit::MuxPeriphery] = {
      0.0, s.memory_arch == MemoryArch::FlipFlop ? a.mux_periphery_logic_ff : a.mux_periphery_logic_sram,
      ClockDomain::Rf};
  return b;
}

inline SquareMicrons subunit_area(const SubunitBudget& u, const TechnologyParams& tech) {
  return u.ff_count * tech.effective_a_ff() + u.logic_transistors * tech.effective_a_mos();
}

inline Watts subunit_power(const SubunitBudget& u, const Scenario& s) {
  const Hertz f = u.clock == ClockDomain::Bias ? bias_clock(s) : rf_clock(s);
  const Farads c = u.ff_count * s.tech.effective_c_ff() + u.logic_transistors * s.tech.effective_c_mos();
  return switching_power(c, f, s.op.v_dd, s.op.sigma_con);
}

/// The data input control is idle during qubit operation: its area always
/// counts, its power only when `include_data_input` is set.
inline AreaPower managing_report(const Scenario& s, bool include_data_input = false) {
  const DigitalBudget b = derive_budget(s);
  AreaPower r;
  for (Subunit u : kSubunits) {
    r.area_um2 += subunit_area(b[u], s.tech);
    if (u != Subunit::DataInputControl || include_data_input) r.power_w += subunit_power(b[u], s);
  }
  return r;
}

}  // namespace cryoctl
