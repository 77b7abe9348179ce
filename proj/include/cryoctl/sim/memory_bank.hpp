#pragma once

// Bias and RF register files. Writes shift one bit per clock into a single
// register; reads return a whole register at once. The RF part has two
// independent read ports.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cryoctl/errors.hpp"
#include "cryoctl/sim/protocol.hpp"

namespace cryoctl::sim {

class MemoryBank {
  template <class Self>
  static auto& at(Self& self, WordType bank, int address) {
    auto& v = bank == WordType::Bias ? self.bias_ : self.rf_;
    if (address < 0 || static_cast<std::size_t>(address) >= v.size())
      throw ValidationError(std::string(bank == WordType::Bias ? "bias" : "rf") + " register " +
                            std::to_string(address) + " out of range");
    return v[static_cast<std::size_t>(address)];
  }

 public:
  explicit MemoryBank(const WordFormat& f = {})
      : format_(f), bias_(static_cast<std::size_t>(f.bias_registers), 0u),
        rf_(static_cast<std::size_t>(f.rf_registers), 0u) {
    validate(f);
  }

  const WordFormat& format() const { return format_; }

  /// Shifts `bit` into the LSB end; after n shifts the register holds the
  /// n bits in arrival order, MSB first.
  void shift_in(WordType bank, int address, bool bit) {
    std::uint32_t& r = reg(bank, address);
    const int n = format_.payload_bits(bank);
    const std::uint32_t mask = n >= 32 ? ~0u : (std::uint32_t{1} << n) - 1u;
    r = ((r << 1) | (bit ? 1u : 0u)) & mask;
  }

  /// Full serial write: n clocks of shift_in.
  void write_serial(WordType bank, int address, std::uint32_t value) {
    const int n = format_.payload_bits(bank);
    for (int i = n - 1; i >= 0; --i) shift_in(bank, address, ((value >> i) & 1u) != 0);
  }

  std::uint32_t read_bias(int address) const { return read(WordType::Bias, address); }

  /// Both RF ports in one read clock.
  std::pair<std::uint32_t, std::uint32_t> read_rf(int port_a, int port_b) const {
    return {read(WordType::Rf, port_a), read(WordType::Rf, port_b)};
  }

  std::uint32_t read(WordType bank, int address) const { return at(*this, bank, address); }

  bool operator==(const MemoryBank&) const = default;

 private:
  std::uint32_t& reg(WordType bank, int address) { return at(*this, bank, address); }

  WordFormat format_;
  std::vector<std::uint32_t> bias_;
  std::vector<std::uint32_t> rf_;
};

}  // namespace cryoctl::sim
