#pragma once

// Serial wire formats. Data words: header 1, type bit (0 bias, 1 RF), 8-bit
// address MSB-first, payload MSB-first. RF command words: header 1, then the
// sequence IDs e1/e2 of set 1 and e1/e2 of set 2, MSB-first. Idle line is 0.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cryoctl/errors.hpp"

namespace cryoctl::sim {

using Bitstream = std::vector<bool>;

inline constexpr int kAddressBits = 8;
inline constexpr int kDataWordOverhead = 2 + kAddressBits;  // header, type, address
inline constexpr int kReceptionCounterBits = 5;
/// Longest payload the 5-bit reception counter can time.
inline constexpr int kMaxPayloadBits = (1 << kReceptionCounterBits) - 1 - kDataWordOverhead;

enum class WordType : std::uint8_t { Bias = 0, Rf = 1 };

struct DataWord {
  WordType type = WordType::Bias;
  int address = 0;
  std::uint32_t payload = 0;

  bool operator==(const DataWord&) const = default;
};

/// Register counts and payload widths that bound a data word.
struct WordFormat {
  int n_bias = 12;
  int n_rf = 10;
  int bias_registers = 9;
  int rf_registers = 256;

  int payload_bits(WordType t) const { return t == WordType::Bias ? n_bias : n_rf; }
  int registers(WordType t) const { return t == WordType::Bias ? bias_registers : rf_registers; }
  int word_bits(WordType t) const { return kDataWordOverhead + payload_bits(t); }

  bool operator==(const WordFormat&) const = default;
};

inline void validate(const WordFormat& f) {
  for (int n : {f.n_bias, f.n_rf}) {
    if (n < 1) throw ValidationError("payload width must be at least 1 bit");
    if (n > kMaxPayloadBits)
      throw ValidationError("payload width " + std::to_string(n) + " exceeds what the 5-bit reception counter can time (max " +
                            std::to_string(kMaxPayloadBits) + ")");
  }
  for (int r : {f.bias_registers, f.rf_registers})
    if (r < 1 || r > (1 << kAddressBits)) throw ValidationError("register count must be in [1, 256]");
}

inline void check_word(const DataWord& w, const WordFormat& f) {
  const char* kind = w.type == WordType::Bias ? "bias" : "rf";
  if (w.address < 0 || w.address >= f.registers(w.type))
    throw ValidationError(std::string(kind) + " address " + std::to_string(w.address) + " out of range [0, " +
                          std::to_string(f.registers(w.type) - 1) + "]");
  const int n = f.payload_bits(w.type);
  if (n < 32 && w.payload >= (std::uint32_t{1} << n))
    throw ValidationError(std::string(kind) + " payload " + std::to_string(w.payload) + " does not fit in " +
                          std::to_string(n) + " bits");
}

namespace detail {
inline void append_msb_first(Bitstream& out, std::uint32_t v, int bits) {
  for (int i = bits - 1; i >= 0; --i) out.push_back(((v >> i) & 1u) != 0);
}

inline std::uint32_t read_msb_first(const Bitstream& in, std::size_t& pos, int bits) {
  std::uint32_t v = 0;
  for (int i = 0; i < bits; ++i) v = (v << 1) | (in[pos++] ? 1u : 0u);
  return v;
}
}  // namespace detail

inline Bitstream encode_dataword(const DataWord& w, const WordFormat& f) {
  check_word(w, f);
  Bitstream out;
  out.reserve(static_cast<std::size_t>(f.word_bits(w.type)));
  out.push_back(true);
  out.push_back(w.type == WordType::Rf);
  detail::append_msb_first(out, static_cast<std::uint32_t>(w.address), kAddressBits);
  detail::append_msb_first(out, w.payload, f.payload_bits(w.type));
  return out;
}

/// Decodes one complete word. Leading idle zeros are skipped.
inline DataWord decode_dataword(const Bitstream& bits, const WordFormat& f) {
  std::size_t pos = 0;
  while (pos < bits.size() && !bits[pos]) ++pos;
  if (pos == bits.size()) throw ParseError("no header bit in data word");
  ++pos;
  if (bits.size() - pos < 1 + kAddressBits) throw ParseError("data word truncated before address end");
  DataWord w;
  w.type = bits[pos++] ? WordType::Rf : WordType::Bias;
  w.address = static_cast<int>(detail::read_msb_first(bits, pos, kAddressBits));
  const int n = f.payload_bits(w.type);
  if (bits.size() - pos < static_cast<std::size_t>(n)) throw ParseError("data word truncated in payload");
  w.payload = detail::read_msb_first(bits, pos, n);
  if (w.address >= f.registers(w.type)) throw ParseError("data word address out of range");
  return w;
}

// ---------------------------------------------------------------------------

/// Two sets of two sequence IDs: set 1 plays first, then set 2.
struct RfCommandWord {
  std::array<std::uint8_t, 2> set1{};  // {e1, e2}
  std::array<std::uint8_t, 2> set2{};

  const std::array<std::uint8_t, 2>& set(int i) const { return i == 0 ? set1 : set2; }
  bool operator==(const RfCommandWord&) const = default;
};

inline int command_word_bits(int id_bits) { return 1 + 4 * id_bits; }

inline Bitstream encode_command(const RfCommandWord& c, int id_bits = 4) {
  Bitstream out;
  out.push_back(true);
  for (const auto* set : {&c.set1, &c.set2})
    for (std::uint8_t id : *set) {
      if (id >= (1u << id_bits))
        throw ValidationError("sequence ID " + std::to_string(id) + " does not fit in " + std::to_string(id_bits) +
                              " bits");
      detail::append_msb_first(out, id, id_bits);
    }
  return out;
}

inline RfCommandWord decode_command(const Bitstream& bits, int id_bits = 4) {
  std::size_t pos = 0;
  while (pos < bits.size() && !bits[pos]) ++pos;
  if (bits.size() - pos < static_cast<std::size_t>(command_word_bits(id_bits)))
    throw ParseError("command word truncated");
  ++pos;
  RfCommandWord c;
  for (auto* set : {&c.set1, &c.set2})
    for (auto& id : *set) id = static_cast<std::uint8_t>(detail::read_msb_first(bits, pos, id_bits));
  return c;
}

}  // namespace cryoctl::sim
