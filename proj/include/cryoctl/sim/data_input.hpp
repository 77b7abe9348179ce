#pragma once

// Data input control: receives serial data words, then shifts the payload
// into the addressed register and acknowledges.

#include <cstdint>
#include <optional>
#include <string>

#include "cryoctl/sim/memory_bank.hpp"
#include "cryoctl/sim/protocol.hpp"
#include "cryoctl/sim/trace.hpp"

namespace cryoctl::sim {

struct DataInputResult {
  bool feedback = false;  // word written and acknowledged on this clock
  bool error = false;     // reception aborted on this clock
};

class DataInputControl {
 public:
  enum class State { Idle, Receive, Write };

  explicit DataInputControl(const WordFormat& f) : format_(f) { validate(f); }

  State state() const { return state_; }
  std::uint64_t words_written() const { return words_; }
  std::uint64_t errors() const { return errors_; }

  /// One clock. `bit` is the sampled line; nullopt means the line was not
  /// driven, which aborts a word in progress.
  DataInputResult clock(TimeFs t, std::optional<bool> bit, MemoryBank& mem, Trace* tr = nullptr) {
    DataInputResult r;
    if (feedback_high_) {
      feedback_high_ = false;
      if (tr) tr->emit(t, "feedback", 0);
    }
    switch (state_) {
      case State::Idle:
        if (bit.value_or(false)) {
          state_ = State::Receive;
          counter_ = 1;
          word_ = {};
        }
        break;
      case State::Receive:
        if (!bit) {
          fail(t, tr, r);
          break;
        }
        receive(*bit);
        if (counter_ == kDataWordOverhead + format_.payload_bits(word_.type)) {
          if (word_.address >= format_.registers(word_.type)) {
            fail(t, tr, r);
            break;
          }
          state_ = State::Write;
          write_step_ = 0;
        }
        break;
      case State::Write: write(t, mem, tr, r); break;
    }
    return r;
  }

 private:
  void receive(bool b) {
    const int pos = counter_++;  // 0 is the header
    if (pos == 1) {
      word_.type = b ? WordType::Rf : WordType::Bias;
    } else if (pos < kDataWordOverhead) {
      word_.address = (word_.address << 1) | (b ? 1 : 0);
    } else {
      word_.payload = (word_.payload << 1) | (b ? 1u : 0u);
    }
  }

  void write(TimeFs t, MemoryBank& mem, Trace* tr, DataInputResult& r) {
    const int n = format_.payload_bits(word_.type);
    if (write_step_ == 0 && tr) {
      tr->emit(t, word_.type == WordType::Bias ? "write_select_bias" : "write_select_rf", word_.address);
      tr->emit(t, "write_enable", 1);
    }
    const int shift = n - 1 - write_step_;
    mem.shift_in(word_.type, word_.address, ((word_.payload >> shift) & 1u) != 0);
    if (++write_step_ == n) {
      if (tr) {
        tr->emit(t, "write_enable", 0);
        tr->emit(t, "feedback", 1);
      }
      feedback_high_ = true;
      r.feedback = true;
      ++words_;
      state_ = State::Idle;
    }
  }

  void fail(TimeFs t, Trace* tr, DataInputResult& r) {
    if (tr) tr->emit(t, "rx_error", counter_);
    ++errors_;
    r.error = true;
    state_ = State::Idle;
  }

  WordFormat format_;
  State state_ = State::Idle;
  int counter_ = 0;  // reception counter
  int write_step_ = 0;
  bool feedback_high_ = false;
  DataWord word_{};
  std::uint64_t words_ = 0;
  std::uint64_t errors_ = 0;
};

}  // namespace cryoctl::sim
