// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "ultrabound/error.hpp"
#include "ultrabound/fit.hpp"
#include "ultrabound/function_spec.hpp"
#include "ultrabound/io.hpp"
#include "ultrabound/quadrature.hpp"
#include "ultrabound/rk4.hpp"
#include "ultrabound/sampled_curve.hpp"

namespace ub = ultrabound;

TEST(FunctionSpec, PolyExpAllModifiersOff) {
  ub::FunctionSpec f(ub::PolyExp{1, 0, 0, 0, 0});
  EXPECT_DOUBLE_EQ(f(7.0), 1.0);
}

TEST(FunctionSpec, PurePower) {
  ub::FunctionSpec f(ub::PolyExp{1, 0, 1, 0, 0});
  EXPECT_DOUBLE_EQ(f(2.0), 0.5);
}

TEST(FunctionSpec, DoubleExpAtOne) {
  ub::FunctionSpec f(ub::DoubleExp{1, 1, 1});
  EXPECT_NEAR(f(1.0), std::exp(std::exp(1.0)), 1e-12 * 15.2);
  EXPECT_NEAR(f(1.0), 15.154262, 1e-6);
}

TEST(FunctionSpec, DoubleExpOverflowStaysInLogSpace) {
  ub::FunctionSpec f(ub::DoubleExp{1, 1, 1});
  const auto e = f.evaluate(0.1);
  EXPECT_TRUE(e.overflow);
  EXPECT_TRUE(std::isinf(e.value));
  EXPECT_NEAR(e.log_value, std::exp(10.0), 1e-9 * std::exp(10.0));
}

TEST(FunctionSpec, LogAtLogAvoidsOverflow) {
  ub::FunctionSpec f(ub::PolyExp{2, 0, 1.5, 0, 0});
  // log(2 e^(-1.5 u)) at u = 1000, far past the double range of e^u.
  EXPECT_NEAR(f.log_at_log(1000.0), std::log(2.0) - 1500.0, 1e-9);
}

TEST(FunctionSpec, RejectsNegativeParameters) {
  EXPECT_THROW(ub::FunctionSpec(ub::PolyExp{-1, 0, 0, 0, 0}), ub::DomainError);
}

TEST(Sample, ConstantOnSmallGrid) {
  const auto c = ub::sample(ub::FunctionSpec::constant(1.0), std::vector<double>{1, 2, 3});
  ASSERT_EQ(c.size(), 3u);
  for (double v : c.values()) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Sample, PowerOnDyadicGrid) {
  std::vector<double> g;
  for (int k = 4; k >= -4; --k) g.push_back(std::ldexp(1.0, -k));
  const auto c = ub::sample(ub::FunctionSpec::power(1.0, 2.0), g);
  for (int k = 4; k >= -4; --k) EXPECT_NEAR(c.values()[4 - k], std::ldexp(1.0, 2 * k), 1e-12 * std::ldexp(1.0, 2 * k));
}

TEST(Sample, DoubleExpLogs) {
  const auto c = ub::sample_log(ub::FunctionSpec(ub::DoubleExp{1, 1, 1}), std::vector<double>{0.5, 1, 2});
  EXPECT_NEAR(c.values()[0], std::exp(2.0), 1e-12);
  EXPECT_NEAR(c.values()[1], std::exp(1.0), 1e-12);
  EXPECT_NEAR(c.values()[2], std::exp(0.5), 1e-12);
}

TEST(SampledCurve, LogLinearIsExactOnPowerLaws) {
  const auto g = ub::log_grid(0.1, 10, 5);
  std::vector<double> y;
  for (double x : g) y.push_back(3.0 * std::pow(x, -1.7));
  ub::SampledCurve c(g, y, ub::Interp::log_linear);
  EXPECT_NEAR(c(0.37), 3.0 * std::pow(0.37, -1.7), 1e-12 * c(0.37));
}

TEST(SampledCurve, OutsideHullThrows) {
  ub::SampledCurve c({1, 2}, {1, 2});
  EXPECT_FALSE(c.contains(3.0));
  EXPECT_THROW(c(3.0), ub::OutOfHullError);
}

TEST(Grids, EndpointsExact) {
  const auto g = ub::log_grid(1e-2, 1e2, 64);
  EXPECT_EQ(g.size(), 64u);
  EXPECT_DOUBLE_EQ(g.front(), 1e-2);
  EXPECT_DOUBLE_EQ(g.back(), 1e2);
}

TEST(Io, FunctionSpecRoundTrip) {
  ub::FunctionSpec s(ub::PolyExp{0.1, 1e-17, 3.0 / 7, 2, 0.5}, ub::Role::lsi_beta);
  const auto j = ub::io::to_json(s);
  const auto back = ub::io::function_spec_from_json(ub::io::Json::parse(j.dump()));
  EXPECT_EQ(ub::io::to_json(back), j);
  EXPECT_EQ(back.role(), ub::Role::lsi_beta);
}

TEST(Io, TabulatedRoundTripAndNonFiniteRejected) {
  ub::FunctionSpec s(ub::Tabulated{ub::SampledCurve({1, 2, 3}, {1, 0.5, 2}, ub::Interp::log_linear)});
  const auto j = ub::io::to_json(s);
  EXPECT_EQ(ub::io::to_json(ub::io::function_spec_from_json(j)), j);
  auto bad = j;
  bad["y"][1] = "inf";
  EXPECT_THROW(ub::io::function_spec_from_json(bad), ub::DomainError);
}

TEST(Io, UnknownFamilyIsDomainError) {
  EXPECT_THROW(ub::io::function_spec_from_json(ub::io::Json::parse(R"({"family":"nope"})")),
               ub::DomainError);
}

TEST(Io, GridParsing) {
  const auto g = ub::io::parse_grid("0.01:0.3:16");
  EXPECT_EQ(g.spacing, ub::io::Spacing::log);
  EXPECT_EQ(g.points().size(), 16u);
  EXPECT_EQ(ub::io::parse_grid("-1:1:3").spacing, ub::io::Spacing::linear);
  EXPECT_EQ(ub::io::parse_grid("1:2:3:lin").points()[1], 1.5);
}

TEST(Io, EmptyGridsRejected) {
  for (const char* bad : {"1:1:0", "2:1:5", "1:2:0", "1:2", "a:2:3", "-1:2:3:log", "1:2:3:cubic"}) {
    EXPECT_THROW(ub::io::parse_grid(bad), ub::DomainError) << bad;
  }
}

TEST(Io, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) {
    EXPECT_EQ(std::stod(ub::io::format_double(v)), v);
  }
  EXPECT_EQ(ub::io::format_double(-INFINITY), "-inf");
}

TEST(Io, SequenceShorthand) {
  EXPECT_EQ(ub::io::parse_sequence("power:0.5").a(3), 9.0);
  EXPECT_NEAR(ub::io::parse_sequence("logpower:1").a(1), std::pow(std::log(3.0), 2.0), 1e-15);
}

TEST(Quadrature, SmoothIntegral) {
  const auto r = ub::quad::integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0, 1e-13);
}

TEST(Quadrature, TailIntegral) {
  // int_1^inf x e^-x dx = 2/e.
  const auto r = ub::quad::integrate_to_infinity([](double x) { return x * std::exp(-x); }, 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0 / std::exp(1.0), 1e-12);
}

TEST(Quadrature, DivergentTailIsNotConverged) {
  const auto r = ub::quad::integrate_to_infinity([](double x) { return 1.0 / x; }, 1.0);
  EXPECT_FALSE(r.converged);
}

TEST(Quadrature, WeightedFromZeroHandlesSingularity) {
  // int_0^1 s^-0.5 ds = 2.
  const auto r = ub::quad::integrate_weighted_from_zero([](double) { return 1.0; }, -0.5, 1.0);
  EXPECT_NEAR(r.value, 2.0, 1e-11);
}

TEST(Rk4, MatchesFixedStepReference) {
  auto f = [](double x, double y) { return -2.0 * x * y; };
  const std::vector<double> targets{0.5, 1.0, 2.0};
  const auto s = ub::ode::rk4_sweep(f, 0.0, 1.0, targets);
  ASSERT_EQ(s.reached, 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(s.values[i], std::exp(-targets[i] * targets[i]), 1e-10);
}

TEST(Fit, ExactLine) {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{1, 3, 5, 7};
  const auto f = ub::fit_line(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.rms, 0.0, 1e-14);
}
