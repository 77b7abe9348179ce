#pragma once

// Bias control and the sample-and-hold capacitors it refreshes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cryoctl/errors.hpp"
#include "cryoctl/sim/memory_bank.hpp"
#include "cryoctl/sim/trace.hpp"

namespace cryoctl::sim {

struct Conversion {
  int electrode = 0;
  std::uint32_t code = 0;
};

/// Refresh mode: round-robin over the electrodes, one DAC conversion every
/// second clock. Ramp mode: the electrode named by the last bias register
/// receives an incrementing code; the electrode counter is frozen.
class BiasControl {
 public:
  enum class Mode { Refresh, Ramp };

  BiasControl(int n_electrodes, int n_bits) : n_electrodes_(n_electrodes), n_bits_(n_bits) {
    if (n_electrodes < 1) throw ValidationError("bias control needs at least one electrode");
  }

  Mode mode() const { return mode_; }
  int electrode_counter() const { return electrode_counter_; }
  std::uint32_t ramp_counter() const { return ramp_counter_; }
  std::uint64_t errors() const { return errors_; }

  void set_ramp_mode(bool on) { mode_ = on ? Mode::Ramp : Mode::Refresh; }

  /// Register holding the ramp target electrode.
  int ramp_target_register() const { return n_electrodes_; }

  std::optional<Conversion> clock(TimeFs t, const MemoryBank& mem, Trace* tr = nullptr) {
    const bool convert = !phase_;
    phase_ = !phase_;
    if (!convert) return std::nullopt;
    if (mode_ == Mode::Refresh) {
      Conversion c{electrode_counter_, mem.read_bias(electrode_counter_)};
      electrode_counter_ = (electrode_counter_ + 1) % n_electrodes_;
      return c;
    }
    const std::uint32_t target = mem.read_bias(ramp_target_register());
    if (target >= static_cast<std::uint32_t>(n_electrodes_)) {
      ++errors_;
      if (tr) tr->emit(t, "bias_error", target);
      return std::nullopt;
    }
    Conversion c{static_cast<int>(target), ramp_counter_};
    if (tr) tr->emit(t, "ramp_code", ramp_counter_);
    ramp_counter_ = (ramp_counter_ + 1) & ((std::uint32_t{1} << n_bits_) - 1u);
    return c;
  }

 private:
  int n_electrodes_;
  int n_bits_;
  Mode mode_ = Mode::Refresh;
  int electrode_counter_ = 0;
  std::uint32_t ramp_counter_ = 0;
  bool phase_ = false;
  std::uint64_t errors_ = 0;
};

/// Hold capacitors discharging through R_off between refreshes:
/// v(t) = v_set·exp(-(t - t_set)/τ), evaluated lazily.
class HoldCapBank {
 public:
  HoldCapBank(int n, double tau_s, double v_range, int n_bits)
      : tau_s_(tau_s), v_range_(v_range), full_scale_(std::ldexp(1.0, n_bits)), caps_(static_cast<std::size_t>(n)) {
    if (!(tau_s > 0.0)) throw ValidationError("hold time constant must be positive");
    for (int i = 0; i < n; ++i) names_.push_back("v_e" + std::to_string(i));
  }

  int size() const { return static_cast<int>(caps_.size()); }

  double ideal(std::uint32_t code) const { return code / full_scale_ * v_range_; }

  double voltage(int i, TimeFs t) const {
    const Cap& c = caps_[static_cast<std::size_t>(i)];
    return c.v_set * std::exp(-static_cast<double>(t - c.t_set) * 1e-15 / tau_s_);
  }

  /// Recharges electrode `c.electrode` to the ideal code voltage. When the
  /// code is unchanged the pre-refresh shortfall is the droop since the last
  /// refresh and feeds the deviation statistic.
  void apply(TimeFs t, const Conversion& c, Trace* tr = nullptr) {
    Cap& cap = caps_[static_cast<std::size_t>(c.electrode)];
    const double pre = voltage(c.electrode, t);
    const double post = std::clamp(ideal(c.code), 0.0, v_range_);
    if (cap.refreshed && cap.code == c.code) {
      const double dev = post - pre;
      if (dev > max_deviation_) {
        max_deviation_ = dev;
        worst_electrode_ = c.electrode;
      }
    }
    if (tr && pre != post) {
      tr->emit(t, names_[static_cast<std::size_t>(c.electrode)], pre);
      tr->emit(t, names_[static_cast<std::size_t>(c.electrode)], post);
    }
    cap = {post, t, c.code, true};
    ++refreshes_;
  }

  double max_deviation() const { return max_deviation_; }
  int worst_electrode() const { return worst_electrode_; }
  std::uint64_t refreshes() const { return refreshes_; }

 private:
  struct Cap {
    double v_set = 0.0;
    TimeFs t_set = 0;
    std::uint32_t code = 0;
    bool refreshed = false;
  };

  double tau_s_;
  double v_range_;
  double full_scale_;
  std::vector<Cap> caps_;
  std::vector<std::string> names_;
  double max_deviation_ = 0.0;
  int worst_electrode_ = -1;
  std::uint64_t refreshes_ = 0;
};

}  // namespace cryoctl::sim
