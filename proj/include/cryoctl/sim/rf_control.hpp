#pragma once

// RF control: receives command words into staging flip-flops and plays the
// selected sequences from the RF memory, two electrodes in parallel.

#include <cmath>
#include <cstdint>
#include <optional>

#include "cryoctl/errors.hpp"
#include "cryoctl/sim/memory_bank.hpp"
#include "cryoctl/sim/protocol.hpp"
#include "cryoctl/sim/trace.hpp"

namespace cryoctl::sim {

struct RfSample {
  std::uint32_t code1 = 0;
  std::uint32_t code2 = 0;
};

class RfControl {
 public:
  RfControl(int id_bits, int l_pulse, int n_bits, double v_range)
      : id_bits_(id_bits), l_pulse_(l_pulse), full_scale_(std::ldexp(1.0, n_bits)), v_range_(v_range) {
    if (id_bits < 1 || l_pulse < 1) throw ValidationError("RF control needs at least one sequence and sample");
  }

  bool playing() const { return active_.has_value(); }
  bool staged() const { return staging_.has_value(); }
  int sample_counter() const { return counter_; }
  int set_select() const { return set_sel_; }
  std::uint64_t samples() const { return samples_; }
  std::uint64_t backpressure() const { return backpressure_; }
  std::uint64_t commands() const { return commands_; }
  std::uint64_t errors() const { return errors_; }

  double voltage(std::uint32_t code) const { return code / full_scale_ * v_range_; }

  /// Accepts a fully received command: straight into the latches when idle,
  /// into staging while a command plays, dropped when both are occupied.
  void accept(TimeFs t, const RfCommandWord& c, Trace* tr = nullptr) {
    ++commands_;
    if (!active_) {
      start(c);
    } else if (!staging_) {
      staging_ = c;
    } else {
      ++backpressure_;
      if (tr) tr->emit(t, "rf_backpressure", 1);
    }
  }

  /// One RF clock. `cmd_bit` is the command line; samples are produced only
  /// when `sample_edge` is set (every second clock).
  std::optional<RfSample> clock(TimeFs t, std::optional<bool> cmd_bit, bool sample_edge, const MemoryBank& mem,
                                Trace* tr = nullptr) {
    if (end_high_) {
      end_high_ = false;
      if (tr) tr->emit(t, "end_sequ", 0);
    }
    std::optional<RfSample> out;
    if (sample_edge && active_) out = sample(t, mem, tr);
    receive(t, cmd_bit, tr);
    return out;
  }

 private:
  void start(const RfCommandWord& c) {
    active_ = c;
    set_sel_ = 0;
    counter_ = 0;
  }

  RfSample sample(TimeFs t, const MemoryBank& mem, Trace* tr) {
    const auto& ids = active_->set(set_sel_);
    const auto [a, b] = mem.read_rf(ids[0] * l_pulse_ + counter_, ids[1] * l_pulse_ + counter_);
    if (tr) {
      tr->emit(t, "rf_out1", voltage(a));
      tr->emit(t, "rf_out2", voltage(b));
    }
    ++samples_;
    if (++counter_ == l_pulse_) {
      counter_ = 0;
      end_high_ = true;
      if (tr) tr->emit(t, "end_sequ", 1);
      if (set_sel_ == 0) {
        set_sel_ = 1;
      } else if (staging_) {
        start(*staging_);
        staging_.reset();
      } else {
        active_.reset();
      }
    }
    return {a, b};
  }

  void receive(TimeFs t, std::optional<bool> bit, Trace* tr) {
    if (rx_count_ == 0) {
      if (bit.value_or(false)) {
        rx_bits_.assign(1, true);
        rx_count_ = 1;
      }
      return;
    }
    if (!bit) {
      ++errors_;
      rx_count_ = 0;
      if (tr) tr->emit(t, "rf_rx_error", 1);
      return;
    }
    rx_bits_.push_back(*bit);
    if (++rx_count_ == command_word_bits(id_bits_)) {
      rx_count_ = 0;
      accept(t, decode_command(rx_bits_, id_bits_), tr);
    }
  }

  int id_bits_;
  int l_pulse_;
  double full_scale_;
  double v_range_;

  std::optional<RfCommandWord> staging_;
  std::optional<RfCommandWord> active_;
  int set_sel_ = 0;
  int counter_ = 0;
  bool end_high_ = false;

  Bitstream rx_bits_;
  int rx_count_ = 0;

  std::uint64_t samples_ = 0;
  std::uint64_t backpressure_ = 0;
  std::uint64_t commands_ = 0;
  std::uint64_t errors_ = 0;
};

}  // namespace cryoctl::sim
