// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ultrabound/error.hpp"
#include "ultrabound/sampled_curve.hpp"
#include "ultrabound/torus.hpp"

namespace ub = ultrabound;
namespace to = ultrabound::torus;

TEST(Theta, AgreesWithNaiveSum) {
  for (double s : ub::log_grid(0.01, 20, 40)) {
    EXPECT_NEAR(to::theta(s) / static_cast<double>(oracle::theta_naive(s)), 1.0, 1e-14) << s;
  }
}

TEST(Theta, DirectAndPoissonAgree) {
  for (double s : ub::log_grid(0.05, 5, 100)) EXPECT_NEAR(to::theta_direct(s) / to::theta_poisson(s), 1.0, 1e-12);
}

TEST(Theta, ValueAtOne) { EXPECT_NEAR(to::theta(1.0), 1.7726372, 1e-6); }

TEST(Theta, DecreasingToOne) {
  double prev = INFINITY;
  // Past s ~ 37 theta rounds to 1 in double precision.
  for (double s : ub::log_grid(0.01, 30, 60)) {
    const double v = to::theta(s);
    EXPECT_GE(v, 1.0);
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_NEAR(to::theta(50.0), 1.0, 1e-20);
}

TEST(Counting, Examples) {
  EXPECT_EQ(to::counting(to::CoefficientSequence(to::Power{1}), 10), 10u);
  EXPECT_EQ(to::counting(to::CoefficientSequence(to::Power{0.5}), 10), 3u);
  EXPECT_EQ(to::counting(to::CoefficientSequence(to::LogPower{1}), 4), 5u);
}

TEST(Counting, MatchesBruteForce) {
  for (double g : {0.5, 1.0, 2.0}) {
    const to::CoefficientSequence seq(to::LogPower{g});
    for (double x : {1.0, 2.5, 3.7, 5.0}) {
      EXPECT_EQ(to::counting(seq, x), oracle::count_brute([&](std::uint64_t k) { return seq.a(k); }, x));
    }
  }
  const to::CoefficientSequence p(to::Power{0.7});
  for (double x : {1.0, 7.0, 123.4}) {
    EXPECT_EQ(to::counting(p, x), oracle::count_brute([&](std::uint64_t k) { return p.a(k); }, x));
  }
}

TEST(Kernel, SingleAndDoubleFactor) {
  const double t = 0.3;
  const auto one = to::product_kernel(to::CoefficientSequence(to::Explicit{{1.0}}), t);
  EXPECT_NEAR(one.log_value, std::log(to::theta(t)), 1e-15);
  const auto two = to::product_kernel(to::CoefficientSequence(to::Explicit{{1.0, 1.0}}), t);
  EXPECT_NEAR(two.log_value, 2 * std::log(to::theta(t)), 1e-14);
}

TEST(Kernel, PowerMatchesNaiveSum) {
  for (double a : {0.5, 1.0}) {
    const to::CoefficientSequence seq(to::Power{a});
    for (double t : {0.1, 0.3, 1.0}) {
      const auto ev = to::product_kernel(seq, t);
      const double ref = static_cast<double>(oracle::log_kernel_naive([&](std::uint64_t k) { return seq.a(k); }, t));
      EXPECT_NEAR(ev.log_value, ref, 1e-10 * std::max(1.0, ref)) << a << " " << t;
    }
  }
  const auto ev = to::product_kernel(to::CoefficientSequence(to::Power{1}), 0.1);
  EXPECT_GT(ev.log_value, 0.0);
  EXPECT_LT(ev.K, 1000u);
}

TEST(Kernel, LogPowerMatchesNaiveSum) {
  const to::CoefficientSequence seq(to::LogPower{1});
  for (double t : {0.2, 0.5}) {
    const auto ev = to::product_kernel(seq, t);
    const double ref = static_cast<double>(oracle::log_kernel_naive([&](std::uint64_t k) { return seq.a(k); }, t, 1e-20L));
    EXPECT_NEAR(ev.log_value / ref, 1.0, 1e-9) << t;
  }
}

TEST(Kernel, NonincreasingInT) {
  const to::CoefficientSequence seq(to::Power{1});
  double prev = INFINITY;
  for (double t : ub::log_grid(0.01, 3, 20)) {
    const double v = to::product_kernel(seq, t).log_value;
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Fit, PowerOneIsNearOne) {
  const auto f = to::exponent_fit(to::CoefficientSequence(to::Power{1}), ub::log_grid(0.01, 0.3, 16), to::FitMode::single_log);
  EXPECT_NEAR(f.estimate, 1.0, 0.1);
}

TEST(Fit, DoubleLogNeedsLargeKernel) {
  const std::vector<double> t{5.0, 6.0, 7.0};
  EXPECT_THROW(to::exponent_fit(to::CoefficientSequence(to::Power{1}), t, to::FitMode::double_log), ub::DomainError);
}
