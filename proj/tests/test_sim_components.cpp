#include <gtest/gtest.h>

#include <random>

#include "cryoctl/sim/bias_control.hpp"
#include "cryoctl/sim/data_input.hpp"
#include "cryoctl/sim/memory_bank.hpp"
#include "cryoctl/sim/rf_control.hpp"

using namespace cryoctl;
using namespace cryoctl::sim;

namespace {

struct Feed {
  int clocks = 0;
  bool feedback = false;
  bool error = false;
};

/// Clocks a word into `dic`, then idles until feedback or error.
Feed feed_word(DataInputControl& dic, MemoryBank& mem, const Bitstream& bits, Trace* tr = nullptr) {
  Feed f;
  auto step = [&](std::optional<bool> b) {
    const auto r = dic.clock(f.clocks++, b, mem, tr);
    f.feedback |= r.feedback;
    f.error |= r.error;
  };
  for (bool b : bits) step(b);
  for (int i = 0; i < 64 && !f.feedback && !f.error; ++i) step(false);
  return f;
}

}  // namespace

TEST(MemoryBank, SerialWriteReadsBackEveryRegister) {
  const WordFormat f;
  MemoryBank mem(f);
  std::mt19937_64 rng(11);
  for (WordType t : {WordType::Bias, WordType::Rf}) {
    std::uniform_int_distribution<std::uint32_t> code(0, (1u << f.payload_bits(t)) - 1);
    for (int a = 0; a < f.registers(t); ++a)
      for (int k = 0; k < 100; ++k) {
        const std::uint32_t v = code(rng);
        mem.write_serial(t, a, v);
        ASSERT_EQ(mem.read(t, a), v);
      }
  }
}

TEST(MemoryBank, WriteTouchesOnlyTarget) {
  MemoryBank mem;
  MemoryBank before = mem;
  mem.write_serial(WordType::Rf, 17, 0x2AA);
  EXPECT_EQ(mem.read(WordType::Rf, 17), 0x2AAu);
  before.write_serial(WordType::Rf, 17, 0x2AA);
  EXPECT_EQ(mem, before);
  for (int a = 0; a < 256; ++a) EXPECT_EQ(mem.read(WordType::Rf, a), a == 17 ? 0x2AAu : 0u);
  for (int a = 0; a < 9; ++a) EXPECT_EQ(mem.read_bias(a), 0u);
}

TEST(MemoryBank, DualPortReadsAreIndependent) {
  MemoryBank mem;
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> addr(0, 255);
  for (int a = 0; a < 256; ++a) mem.write_serial(WordType::Rf, a, static_cast<std::uint32_t>((a * 37) & 0x3FF));
  for (int k = 0; k < 1000; ++k) {
    const int x = addr(rng), y = addr(rng);
    const auto [p, q] = mem.read_rf(x, y);
    EXPECT_EQ(p, static_cast<std::uint32_t>((x * 37) & 0x3FF));
    EXPECT_EQ(q, static_cast<std::uint32_t>((y * 37) & 0x3FF));
  }
}

TEST(MemoryBank, OutOfRange) {
  MemoryBank mem;
  EXPECT_THROW(mem.read_bias(9), ValidationError);
  EXPECT_THROW(mem.shift_in(WordType::Rf, 256, true), ValidationError);
}

TEST(DataInput, WriteTakesReceptionPlusShiftClocks) {
  const WordFormat f;
  MemoryBank mem(f);
  DataInputControl dic(f);
  Trace tr;
  const Feed r = feed_word(dic, mem, encode_dataword({WordType::Bias, 0, 0xABC}, f), &tr);
  EXPECT_TRUE(r.feedback);
  EXPECT_EQ(r.clocks, 22 + 12);
  EXPECT_EQ(mem.read_bias(0), 0xABCu);
  EXPECT_EQ(dic.words_written(), 1u);
  const auto sel = tr.of("write_select_bias");
  ASSERT_EQ(sel.size(), 1u);
  EXPECT_EQ(sel[0].value, 0.0);
  ASSERT_EQ(tr.of("feedback").size(), 1u);
  EXPECT_EQ(tr.of("feedback")[0].t_fs, r.clocks - 1);
}

TEST(DataInput, RandomWordsLandInTheirRegister) {
  const WordFormat f;
  MemoryBank mem(f);
  DataInputControl dic(f);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 500; ++k) {
    DataWord w;
    w.type = rng() & 1 ? WordType::Rf : WordType::Bias;
    w.address = static_cast<int>(rng() % static_cast<unsigned>(f.registers(w.type)));
    w.payload = static_cast<std::uint32_t>(rng() % (1u << f.payload_bits(w.type)));
    ASSERT_TRUE(feed_word(dic, mem, encode_dataword(w, f)).feedback);
    EXPECT_EQ(mem.read(w.type, w.address), w.payload);
  }
}

TEST(DataInput, UndrivenLineAbortsAndResets) {
  const WordFormat f;
  MemoryBank mem(f);
  DataInputControl dic(f);
  Trace tr;
  const Bitstream w = encode_dataword({WordType::Bias, 1, 5}, f);
  for (std::size_t i = 0; i < 6; ++i) dic.clock(static_cast<TimeFs>(i), w[i], mem, &tr);
  const auto r = dic.clock(6, std::nullopt, mem, &tr);
  EXPECT_TRUE(r.error);
  EXPECT_EQ(dic.state(), DataInputControl::State::Idle);
  EXPECT_EQ(tr.of("rx_error").size(), 1u);
  EXPECT_EQ(mem.read_bias(1), 0u);
  EXPECT_TRUE(feed_word(dic, mem, w).feedback);
  EXPECT_EQ(mem.read_bias(1), 5u);
}

TEST(DataInput, AddressBeyondBankRejected) {
  const WordFormat f;
  MemoryBank mem(f);
  DataInputControl dic(f);
  Bitstream w{true, false};
  for (int i = 7; i >= 0; --i) w.push_back(((9 >> i) & 1) != 0);
  for (int i = 0; i < 12; ++i) w.push_back(true);
  const Feed r = feed_word(dic, mem, w);
  EXPECT_TRUE(r.error);
  EXPECT_FALSE(r.feedback);
  EXPECT_EQ(dic.errors(), 1u);
}

TEST(BiasControl, RefreshVisitsEveryElectrodeInTurn) {
  MemoryBank mem;
  for (int i = 0; i < 8; ++i) mem.write_serial(WordType::Bias, i, static_cast<std::uint32_t>(100 * i));
  BiasControl bc(8, 12);
  std::vector<int> seen;
  for (int k = 0; k < 32; ++k) {
    const auto c = bc.clock(k, mem);
    EXPECT_EQ(c.has_value(), k % 2 == 0);
    if (c) {
      EXPECT_EQ(c->code, static_cast<std::uint32_t>(100 * c->electrode));
      seen.push_back(c->electrode);
    }
  }
  ASSERT_EQ(seen.size(), 16u);
  for (int i = 0; i < 16; ++i) EXPECT_EQ(seen[static_cast<std::size_t>(i)], i % 8);
}

TEST(BiasControl, RampIncrementsOnTarget) {
  MemoryBank mem;
  mem.write_serial(WordType::Bias, 8, 3);
  BiasControl bc(8, 4);
  bc.set_ramp_mode(true);
  std::vector<std::uint32_t> codes;
  for (int k = 0; k < 40; ++k)
    if (auto c = bc.clock(k, mem)) {
      EXPECT_EQ(c->electrode, 3);
      codes.push_back(c->code);
    }
  ASSERT_EQ(codes.size(), 20u);
  for (std::size_t i = 0; i < codes.size(); ++i) EXPECT_EQ(codes[i], i % 16);
  bc.set_ramp_mode(false);
  EXPECT_EQ(bc.electrode_counter(), 0);
}

TEST(BiasControl, RampTargetOutOfRange) {
  MemoryBank mem;
  mem.write_serial(WordType::Bias, 8, 8);
  BiasControl bc(8, 12);
  bc.set_ramp_mode(true);
  Trace tr;
  EXPECT_FALSE(bc.clock(0, mem, &tr).has_value());
  EXPECT_EQ(bc.errors(), 1u);
  EXPECT_EQ(tr.of("bias_error").size(), 1u);
}

TEST(HoldCapBank, ExponentialDroop) {
  const double tau = 0.307;
  HoldCapBank caps(2, tau, 1.0, 12);
  caps.apply(0, {0, 2048});
  const TimeFs t = 1'000'000'000;  // 1 us
  EXPECT_NEAR(caps.voltage(0, t), 0.5 * std::exp(-1e-6 / tau), 1e-15);
  caps.apply(t, {0, 2048});
  EXPECT_NEAR(caps.max_deviation(), 0.5 * (1 - std::exp(-1e-6 / tau)), 1e-15);
  EXPECT_EQ(caps.worst_electrode(), 0);
  EXPECT_EQ(caps.voltage(1, t), 0.0);
}

TEST(HoldCapBank, CodeChangeIsNotDroop) {
  HoldCapBank caps(1, 0.307, 1.0, 12);
  caps.apply(0, {0, 100});
  caps.apply(1'000'000, {0, 4000});
  EXPECT_EQ(caps.max_deviation(), 0.0);
  EXPECT_EQ(caps.refreshes(), 2u);
}

TEST(RfControl, PlaysBothSetsThenStops) {
  MemoryBank mem;
  for (int a = 0; a < 64; ++a) mem.write_serial(WordType::Rf, a, static_cast<std::uint32_t>(a));
  RfControl rf(4, 16, 10, 4e-3);
  Trace tr;
  rf.accept(0, {{0, 1}, {2, 3}}, &tr);
  std::vector<RfSample> out;
  for (int k = 0; k < 80; ++k)
    if (auto s = rf.clock(k, std::nullopt, k % 2 == 0, mem, &tr)) out.push_back(*s);
  ASSERT_EQ(out.size(), 32u);
  for (std::uint32_t i = 0; i < 16; ++i) {
    EXPECT_EQ(out[i].code1, i);
    EXPECT_EQ(out[i].code2, 16 + i);
    EXPECT_EQ(out[16 + i].code1, 32 + i);
    EXPECT_EQ(out[16 + i].code2, 48 + i);
  }
  EXPECT_FALSE(rf.playing());
  EXPECT_EQ(tr.of("end_sequ").size(), 4u);
}

TEST(RfControl, StagedCommandFollowsWithoutGap) {
  MemoryBank mem;
  for (int a = 0; a < 64; ++a) mem.write_serial(WordType::Rf, a, static_cast<std::uint32_t>(a));
  RfControl rf(4, 16, 10, 4e-3);
  rf.accept(0, {{0, 0}, {0, 0}});
  rf.accept(0, {{3, 3}, {3, 3}});
  EXPECT_TRUE(rf.staged());
  std::vector<int> sample_edges;
  std::vector<std::uint32_t> codes;
  for (int k = 0; k < 200; ++k)
    if (auto s = rf.clock(k, std::nullopt, k % 2 == 0, mem)) {
      sample_edges.push_back(k);
      codes.push_back(s->code1);
    }
  ASSERT_EQ(codes.size(), 64u);
  EXPECT_EQ(codes[31], 15u);
  EXPECT_EQ(codes[32], 48u);
  for (std::size_t i = 1; i < sample_edges.size(); ++i) EXPECT_EQ(sample_edges[i] - sample_edges[i - 1], 2);
}

TEST(RfControl, BackpressureWhenStagingFull) {
  RfControl rf(4, 16, 10, 4e-3);
  Trace tr;
  rf.accept(0, {{0, 0}, {0, 0}}, &tr);
  rf.accept(0, {{1, 1}, {1, 1}}, &tr);
  rf.accept(0, {{2, 2}, {2, 2}}, &tr);
  EXPECT_EQ(rf.backpressure(), 1u);
  EXPECT_EQ(tr.of("rf_backpressure").size(), 1u);
}

TEST(RfControl, SerialCommandReception) {
  MemoryBank mem;
  RfControl rf(4, 16, 10, 4e-3);
  const Bitstream b = encode_command({{1, 2}, {3, 4}});
  int k = 0;
  for (bool x : b) rf.clock(k++, x, false, mem);
  EXPECT_EQ(rf.commands(), 1u);
  EXPECT_TRUE(rf.playing());
  RfControl broken(4, 16, 10, 4e-3);
  broken.clock(0, true, false, mem);
  broken.clock(1, std::nullopt, false, mem);
  EXPECT_EQ(broken.errors(), 1u);
  EXPECT_FALSE(broken.playing());
}
