#include <gtest/gtest.h>

#include <random>

#include "cryoctl/digital.hpp"
#include "test_support.hpp"

using namespace cryoctl;
using cryoctl::testing::rel_err;
using cryoctl::testing::scenario_file;

TEST(Switching, RfMemoryOracle) {
  // 2560 bits * 3 fF at 600 MHz, activity 0.026
  EXPECT_NEAR(switching_power(7.68e-12, 600e6, 1.0, 0.026), 1.19808e-4, 1e-10);
}

TEST(Switching, QuadraticInSupply) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> v(0.001, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double a = v(rng);
    EXPECT_LT(rel_err(switching_power(1e-12, 1e6, 2 * a, 0.5), 4 * switching_power(1e-12, 1e6, a, 0.5)), 1e-12);
  }
}

TEST(Memory, DefaultOrganisation) {
  const auto m = memory_design_of(Scenario{});
  EXPECT_EQ(m.bias_registers, 9);
  EXPECT_EQ(m.rf_registers, 256);
  EXPECT_EQ(m.bias_bits(), 108);
  EXPECT_EQ(m.rf_bits(), 2560);
}

TEST(Memory, SelectorTree) {
  EXPECT_DOUBLE_EQ(selector_transistors(9, 12), 30.0 * 12);
  EXPECT_DOUBLE_EQ(selector_transistors(256, 10), 510.0 * 10);
  EXPECT_DOUBLE_EQ(selector_transistors(2, 1), 2.0);
  EXPECT_DOUBLE_EQ(mux_tree_transistors(memory_design_of(Scenario{})), 360 + 30 + 2 * 5100 + 510);
}

TEST(Memory, FlipFlop65nm) {
  const Scenario s;
  const auto r = memory_report(memory_design_of(s), s);
  EXPECT_NEAR(r.area_um2, 2668 * 10.0 + 11100 * 0.375, 1e-9);
  EXPECT_LT(rel_err(r.area_um2, 2.9e4), 0.15);
  EXPECT_LT(rel_err(r.power_w, 1.3e-4), 0.15);
}

TEST(Memory, Sram65nm) {
  const auto s = scenario_file("65nm-sram-1v");
  const auto r = memory_report(memory_design_of(s), s);
  EXPECT_NEAR(r.area_um2, 2668 * 0.5 + 3400 * 0.375, 1e-9);
  EXPECT_LT(rel_err(r.area_um2, 2.6e3), 0.15);
  EXPECT_LT(rel_err(r.power_w, 5.0e-5), 0.15);
}

TEST(Memory, Sram14nmAt10mV) {
  const auto s = scenario_file("14nm-sram-10mv");
  const auto r = memory_report(memory_design_of(s), s);
  EXPECT_LT(rel_err(r.area_um2, 2.1e2), 0.25);
  EXPECT_LT(rel_err(r.power_w, 3.6e-9), 0.25);
}

TEST(Budget, FlipFlopCountsFollowControllerStructure) {
  const auto b = derive_budget(Scenario{});
  EXPECT_DOUBLE_EQ(b[Subunit::DataInputControl].ff_count, 10 + 12 + 5);
  EXPECT_DOUBLE_EQ(b[Subunit::BiasControl].ff_count, 4 + 12 + 1);
  EXPECT_DOUBLE_EQ(b[Subunit::RfControl].ff_count, 16 + 5 + 4 + 1 + 1 + 8);
  EXPECT_DOUBLE_EQ(b[Subunit::ClockControl].ff_count, 0.0);
  EXPECT_DOUBLE_EQ(b[Subunit::ClockControl].logic_transistors, 12.0);
  EXPECT_EQ(b[Subunit::BiasControl].clock, ClockDomain::Bias);
  EXPECT_EQ(b[Subunit::RfControl].clock, ClockDomain::Rf);
}

TEST(Managing, FlipFlop65nm) {
  const auto r = managing_report(Scenario{});
  EXPECT_LT(rel_err(r.area_um2, 2.0e3), 0.20);
  EXPECT_LT(rel_err(r.power_w, 5.4e-5), 0.20);
}

TEST(Managing, Sram14nmAt10mV) {
  EXPECT_LT(rel_err(managing_report(scenario_file("14nm-sram-10mv")).power_w, 2.2e-9), 0.20);
}

TEST(Managing, DataInputAddsPowerNotArea) {
  const Scenario s;
  const auto without = managing_report(s, false);
  const auto with = managing_report(s, true);
  EXPECT_DOUBLE_EQ(with.area_um2, without.area_um2);
  const double added = with.power_w - without.power_w;
  EXPECT_NEAR(added, subunit_power(derive_budget(s)[Subunit::DataInputControl], s), 1e-18);
  EXPECT_LT(rel_err(added, 1.8e-4), 0.20);
}

TEST(Managing, BudgetFileChangesResult) {
  Scenario s;
  const double base = managing_report(s).area_um2;
  s.budget.bias_control_logic += 1000;
  EXPECT_NEAR(managing_report(s).area_um2 - base, 1000 * 0.375, 1e-9);
}
