#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cryoctl/analog_chain.hpp"
#include "test_support.hpp"

using namespace cryoctl;
using cryoctl::testing::rel_err;

TEST(RefreshRate, DefaultInputs) {
  // 1 / (R_off * dv * C_h) once the electrode count cancels.
  const double expected = 1.0 / (1e12 * 3e-6 * 307e-15);
  EXPECT_NEAR(scenario_refresh_rate(Scenario{}), expected, expected * 1e-12);
  EXPECT_NEAR(expected, 1.0858e6, 100.0);
}

TEST(RefreshRate, ScalesInverselyWithLeakageResistance) {
  Scenario s;
  const double base = scenario_refresh_rate(s);
  s.tech.r_off_multiplier = 100.0;
  EXPECT_NEAR(scenario_refresh_rate(s), base / 100.0, base * 1e-14);
}

TEST(BiasPower, ClosedFormEqualsExactWithoutHoldTerm) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> v(0.1, 2.0), c(1e-13, 1e-11), ch(1e-14, 1e-12), dv(1e-7, 1e-5),
      roff(1e10, 1e14);
  std::uniform_int_distribution<int> nb(1, 16);
  for (int i = 0; i < 300; ++i) {
    const int n = nb(rng);
    const double vr = v(rng), cin = c(rng), chold = ch(rng), d = dv(rng), r = roff(rng);
    const double f = refresh_rate(vr, r, n, d, n * chold);
    const double exact = bias_power_exact(f, cin, vr, n * chold, d);
    const double approx = bias_power_approx(n, cin, vr, r, d, n * chold);
    EXPECT_LT(rel_err(exact - 0.5 * f * n * chold * d * d, approx), 1e-9);
  }
}

TEST(BiasPower, HalvingRangeGivesFactorEight) {
  const double p1 = bias_power_approx(8, 1.27e-12, 1.0, 1e12, 3e-6, 8 * 307e-15);
  const double p2 = bias_power_approx(8, 1.27e-12, 0.5, 1e12, 3e-6, 8 * 307e-15);
  EXPECT_NEAR(p1 / p2, 8.0, 1e-12);
}

TEST(BiasPower, RangeAndResolutionGiveFactorThirtyTwo) {
  // Leading-order input capacitance 2^(n/2) C_u.
  const double c12 = std::exp2(6.0) * 10e-15, c8 = std::exp2(4.0) * 10e-15;
  const double p1 = bias_power_approx(8, c12, 1.0, 1e12, 3e-6, 8 * 307e-15);
  const double p2 = bias_power_approx(8, c8, 0.5, 1e12, 3e-6, 8 * 307e-15);
  EXPECT_NEAR(p1 / p2, 32.0, 1e-12);
  // With whole unit capacitors (127 vs 31) the ratio is 8 * 127 / 31.
  const double q1 = bias_power_approx(8, 127 * 10e-15, 1.0, 1e12, 3e-6, 8 * 307e-15);
  const double q2 = bias_power_approx(8, 31 * 10e-15, 0.5, 1e12, 3e-6, 8 * 307e-15);
  EXPECT_NEAR(q1 / q2, 8.0 * 127.0 / 31.0, 1e-9);
}

TEST(SampleHold, Area65And14) {
  const SampleHoldDesign d;
  EXPECT_NEAR(sh_area(d, TechnologyParams{}), 8 * 307.0 / 1.75 + 3.0, 1e-9);
  const auto t14 = apply_node(TechnologyParams{}, Node::Node14);
  EXPECT_NEAR(sh_area(d, t14), 8 * 307.0 / 1.75 / 200.0 + 0.125, 1e-9);
}

TEST(Clocks, ExplicitOrDerived) {
  Scenario s;
  EXPECT_DOUBLE_EQ(bias_clock(s), 2.22e6);
  EXPECT_DOUBLE_EQ(rf_clock(s), 600e6);
  s.op.f_clk_bias.reset();
  s.op.f_clk_rf.reset();
  EXPECT_DOUBLE_EQ(bias_clock(s), 2.0 * scenario_refresh_rate(s));
  EXPECT_DOUBLE_EQ(rf_clock(s), 600e6);
}

TEST(BiasGen, DefaultInputs) {
  const auto r = bias_gen_report(Scenario{});
  EXPECT_LT(rel_err(r.area_um2, 2.2e3), 0.05);
  EXPECT_LT(rel_err(r.power(), 7.0e-7), 0.10);
  EXPECT_GT(r.p_analog, 50 * r.p_digital);
}

TEST(BiasGen, SupplyBarelyMatters) {
  Scenario s;
  const double p1 = bias_gen_report(s).power();
  s.op.v_dd = 0.01;
  EXPECT_LT(rel_err(bias_gen_report(s).power(), p1), 0.02);
}

TEST(BiasGen, ResistiveDacsUseStaticPower) {
  Scenario s;
  s.bias_dac_arch = DacArch::Ladder;
  const auto r = bias_gen_report(s);
  EXPECT_GT(r.p_analog, 1.0 / 150.0);
  EXPECT_LT(r.p_analog, 1.0 / 150.0 * 1.001);
}

TEST(RfGen, SupplySweep) {
  Scenario s;
  auto r = rf_gen_report(s);
  EXPECT_LT(rel_err(r.area_um2, 7.5e2), 0.05);
  EXPECT_GE(r.power(), 1.5e-6 * 0.75);
  EXPECT_LE(r.power(), 1.8e-6 * 1.01);
  s.op.v_dd = 0.1;
  EXPECT_LT(rel_err(rf_gen_report(s).power(), 1.8e-8), 0.25);
  s.op.v_dd = 0.01;
  EXPECT_LT(rel_err(rf_gen_report(s).power(), 3.2e-9), 0.25);
}
