#pragma once

// Event loop over the bias and RF clock domains. A host model drives the
// serial data line (one word at a time, waiting for feedback) and the RF
// command line.

#include <cmath>
#include <cstdint>
#include <deque>
#include <queue>
#include <string>
#include <vector>

#include "cryoctl/analog_chain.hpp"
#include "cryoctl/errors.hpp"
#include "cryoctl/sim/bias_control.hpp"
#include "cryoctl/sim/data_input.hpp"
#include "cryoctl/sim/memory_bank.hpp"
#include "cryoctl/sim/protocol.hpp"
#include "cryoctl/sim/rf_control.hpp"
#include "cryoctl/sim/stimulus.hpp"
#include "cryoctl/sim/trace.hpp"
#include "cryoctl/tech.hpp"

namespace cryoctl::sim {

struct SimConfig {
  WordFormat format{};
  int n_electrodes = 8;
  Volts v_range_bias = 1.0;
  Volts v_range_rf = 4e-3;
  Hertz f_clk_bias = 2.22e6;
  Hertz f_clk_rf = 600e6;
  double tau_hold_s = 1e12 * 307e-15;
  int id_bits = 4;
  int l_pulse = 16;
};

inline SimConfig sim_config_of(const Scenario& s) {
  validate(s);
  const int rf_registers = s.spec.n_pulses * s.spec.l_pulse;
  if (rf_registers > 256) throw ValidationError("n_pulses·l_pulse must fit the 8-bit address space (<= 256)");
  if (s.spec.n_bias_signals + 1 > 256) throw ValidationError("too many bias registers for the 8-bit address space");
  SimConfig c;
  c.format = {s.spec.n_bias, s.spec.n_rf, s.spec.n_bias_signals + 1, rf_registers};
  validate(c.format);
  c.n_electrodes = s.spec.n_bias_signals;
  c.v_range_bias = s.spec.v_range_bias;
  c.v_range_rf = s.spec.v_range_rf;
  c.f_clk_bias = bias_clock(s);
  c.f_clk_rf = rf_clock(s);
  c.tau_hold_s = s.tech.effective_r_off() * s.sizing.c_hold;
  c.id_bits = static_cast<int>(std::lround(std::log2(s.spec.n_pulses)));
  c.l_pulse = s.spec.l_pulse;
  return c;
}

struct SimOptions {
  TimeFs t_end_fs = 200'000 * kFsPerNs;
  bool clock_events = true;
};

struct SimStats {
  std::uint64_t rf_edges = 0;
  std::uint64_t bias_edges = 0;
  std::uint64_t words_written = 0;
  std::uint64_t rx_errors = 0;
  std::uint64_t refreshes = 0;
  std::uint64_t bias_errors = 0;
  std::uint64_t rf_samples = 0;
  std::uint64_t rf_commands = 0;
  std::uint64_t rf_backpressure = 0;
  double max_deviation_v = 0.0;  // worst droop seen before a refresh of an unchanged code
  int worst_electrode = -1;
};

struct SimResult {
  Trace trace;
  SimStats stats;
  MemoryBank memory;
  std::vector<double> final_voltages;
};

/// Time of the k-th rising edge of a clock at `f` Hz, starting at t = 0.
inline TimeFs edge_time(std::uint64_t k, Hertz f) {
  return static_cast<TimeFs>(std::llround(static_cast<double>(k) * 1e15 / f));
}

/// Checks register, code and ID ranges; errors carry the stimulus line.
inline void check_stimulus(const std::vector<StimulusCommand>& cmds, const SimConfig& c) {
  auto fail = [](const StimulusCommand& cmd, const std::string& msg) {
    throw ParseError("line " + std::to_string(cmd.line) + ": " + msg);
  };
  for (const auto& cmd : cmds) {
    switch (cmd.kind) {
      case CommandKind::WriteBias:
      case CommandKind::WriteRf: {
        const WordType type = cmd.kind == CommandKind::WriteBias ? WordType::Bias : WordType::Rf;
        try {
          check_word({type, cmd.address, cmd.code}, c.format);
        } catch (const ValidationError& e) {
          fail(cmd, e.what());
        }
        break;
      }
      case CommandKind::Play:
        for (const auto* set : {&cmd.play.set1, &cmd.play.set2})
          for (auto id : *set)
            if (id >= (1u << c.id_bits))
              fail(cmd, "sequence ID " + std::to_string(id) + " out of range [0, " +
                            std::to_string((1 << c.id_bits) - 1) + "]");
        break;
      case CommandKind::RampMode: break;
    }
  }
}

class Simulator {
 public:
  Simulator(SimConfig cfg, std::vector<StimulusCommand> stimulus, SimOptions opt)
      : cfg_(cfg), opt_(opt), stimulus_(std::move(stimulus)), mem_(cfg.format), data_in_(cfg.format),
        bias_(cfg.n_electrodes, cfg.format.n_bias),
        caps_(cfg.n_electrodes, cfg.tau_hold_s, cfg.v_range_bias, cfg.format.n_bias),
        rf_(cfg.id_bits, cfg.l_pulse, cfg.format.n_rf, cfg.v_range_rf) {
    if (!(cfg.f_clk_bias > 0.0) || !(cfg.f_clk_rf > 0.0)) throw ValidationError("clock rates must be positive");
    if (opt.t_end_fs <= 0) throw ValidationError("simulation end time must be positive");
    check_stimulus(stimulus_, cfg_);
  }

  SimResult run() {
    std::priority_queue<Event, std::vector<Event>, std::greater<>> q;
    if (!stimulus_.empty()) q.push({stimulus_.front().t_fs, kStimulus, 0});
    q.push({0, kRf, 0});
    q.push({0, kBias, 0});

    while (!q.empty()) {
      const Event e = q.top();
      q.pop();
      if (e.t > opt_.t_end_fs) break;
      switch (e.source) {
        case kStimulus:
          on_stimulus(stimulus_[e.index]);
          if (e.index + 1 < stimulus_.size()) q.push({stimulus_[e.index + 1].t_fs, kStimulus, e.index + 1});
          break;
        case kRf:
          on_rf_edge(e.t, e.index);
          q.push({edge_time(e.index + 1, cfg_.f_clk_rf), kRf, e.index + 1});
          break;
        case kBias:
          on_bias_edge(e.t);
          q.push({edge_time(e.index + 1, cfg_.f_clk_bias), kBias, e.index + 1});
          break;
      }
    }

    SimResult r;
    stats_.words_written = data_in_.words_written();
    stats_.rx_errors = data_in_.errors();
    stats_.refreshes = caps_.refreshes();
    stats_.bias_errors = bias_.errors();
    stats_.rf_samples = rf_.samples();
    stats_.rf_commands = rf_.commands();
    stats_.rf_backpressure = rf_.backpressure();
    stats_.max_deviation_v = caps_.max_deviation();
    stats_.worst_electrode = caps_.worst_electrode();
    for (int i = 0; i < caps_.size(); ++i) r.final_voltages.push_back(caps_.voltage(i, opt_.t_end_fs));
    r.trace = std::move(trace_);
    r.stats = stats_;
    r.memory = mem_;
    return r;
  }

 private:
  // Same-time ordering: stimulus, then the RF domain, then the bias domain.
  enum Source : int { kStimulus = 0, kRf = 1, kBias = 2 };

  struct Event {
    TimeFs t;
    int source;
    std::size_t index;  // stimulus index or edge number

    bool operator>(const Event& o) const {
      if (t != o.t) return t > o.t;
      return source > o.source;
    }
  };

  /// Host side of a serial line: queued frames sent back to back.
  struct Line {
    std::deque<Bitstream> queue;
    Bitstream current;
    std::size_t pos = 0;
    bool busy = false;
    bool awaiting_ack = false;

    /// Next bit to drive; idle is 0. With `acked`, a new frame starts only
    /// after the previous one was acknowledged.
    bool next(bool acked) {
      if (!busy && !(acked && awaiting_ack) && !queue.empty()) {
        current = std::move(queue.front());
        queue.pop_front();
        pos = 0;
        busy = true;
      }
      if (!busy) return false;
      const bool b = current[pos++];
      if (pos == current.size()) {
        busy = false;
        awaiting_ack = acked;
      }
      return b;
    }
  };

  void on_stimulus(const StimulusCommand& c) {
    switch (c.kind) {
      case CommandKind::WriteBias:
        data_line_.queue.push_back(encode_dataword({WordType::Bias, c.address, c.code}, cfg_.format));
        break;
      case CommandKind::WriteRf:
        data_line_.queue.push_back(encode_dataword({WordType::Rf, c.address, c.code}, cfg_.format));
        break;
      case CommandKind::Play: cmd_line_.queue.push_back(encode_command(c.play, cfg_.id_bits)); break;
      case CommandKind::RampMode:
        bias_.set_ramp_mode(c.on);
        trace_.emit(c.t_fs, "ramp_config", c.on ? 1 : 0);
        break;
    }
  }

  void on_rf_edge(TimeFs t, std::uint64_t k) {
    ++stats_.rf_edges;
    if (opt_.clock_events) trace_.emit(t, "clk_rf", 1);
    const bool data_bit = data_line_.next(true);
    const DataInputResult r = data_in_.clock(t, data_bit, mem_, &trace_);
    if (r.feedback || r.error) data_line_.awaiting_ack = false;
    if (r.error) data_line_.busy = false;  // host abandons the frame
    const bool cmd_bit = cmd_line_.next(false);
    rf_.clock(t, cmd_bit, k % 2 == 0, mem_, &trace_);
  }

  void on_bias_edge(TimeFs t) {
    ++stats_.bias_edges;
    if (opt_.clock_events) trace_.emit(t, "clk_bias", 1);
    if (auto conv = bias_.clock(t, mem_, &trace_)) caps_.apply(t, *conv, &trace_);
  }

  SimConfig cfg_;
  SimOptions opt_;
  std::vector<StimulusCommand> stimulus_;
  MemoryBank mem_;
  DataInputControl data_in_;
  BiasControl bias_;
  HoldCapBank caps_;
  RfControl rf_;
  Line data_line_;
  Line cmd_line_;
  Trace trace_;
  SimStats stats_;
};

inline SimResult run_simulation(const SimConfig& cfg, std::vector<StimulusCommand> stimulus, SimOptions opt = {}) {
  return Simulator(cfg, std::move(stimulus), opt).run();
}

inline SimResult run_simulation(const Scenario& s, std::vector<StimulusCommand> stimulus, SimOptions opt = {}) {
  return run_simulation(sim_config_of(s), std::move(stimulus), opt);
}

}  // namespace cryoctl::sim
