// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ultrabound/conjugate.hpp"
#include "ultrabound/fit.hpp"
#include "ultrabound/sampled_curve.hpp"

namespace ub = ultrabound;
namespace cj = ultrabound::conjugate;

TEST(SupTransform, QuadraticVertex) {
  const std::vector<double> x{3.0};
  const auto r = cj::sup_transform([](double s, double xx) { return s * xx - s * s / 2; }, x);
  EXPECT_NEAR(r.curve.values()[0], 4.5, 1e-9);
  EXPECT_NEAR(r.argmax.values()[0], 3.0, 1e-4);
}

TEST(SupTransform, NegativeSlopeHasSupremumZero) {
  const std::vector<double> x{0.5};
  const auto r = cj::sup_transform([](double s, double xx) { return s * xx - s; }, x);
  EXPECT_TRUE(std::isfinite(r.curve.values()[0]));
  EXPECT_NEAR(r.curve.values()[0], 0.0, 1e-5);
}

TEST(SupTransform, LinearGrowthDiverges) {
  const std::vector<double> x{2.0};
  const auto r = cj::sup_transform([](double s, double xx) { return s * xx - s; }, x);
  EXPECT_TRUE(std::isinf(r.curve.values()[0]));
  EXPECT_EQ(r.divergent_points.size(), 1u);
}

TEST(Lambda, PowerBetaMatchesStationaryPoint) {
  for (auto [c, a] : {std::pair{1.0, 0.5}, {2.0, 1.0}, {0.5, 2.0}}) {
    const auto y = ub::log_grid(0.1, 100, 25);
    const auto r = cj::lambda_from_beta([=](double t) { return c * std::pow(t, -a); }, y);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double ex = a / (2 * (1 + a)) * std::pow(2 * c * (1 + a), -1 / a) * std::pow(y[i], 1 + 1 / a);
      EXPECT_NEAR(r.curve.values()[i] / ex, 1.0, 1e-8) << "c=" << c << " a=" << a << " y=" << y[i];
    }
  }
}

TEST(Lambda, ConstantBetaThreshold) {
  const std::vector<double> y{-1.0, 1.0, 1.9, 2.1, 5.0};
  const auto r = cj::lambda_from_beta([](double) { return 1.0; }, y);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r.curve.values()[i], 0.0, 1e-8);
  EXPECT_TRUE(std::isinf(r.curve.values()[3]));
  EXPECT_TRUE(std::isinf(r.curve.values()[4]));
}

TEST(NFromLambda, QuadraticLambda) {
  const auto y = ub::linear_grid(-50, 50, 4001);
  std::vector<double> v;
  for (double yy : y) v.push_back(yy * yy);
  const ub::SampledCurve lam(y, v);
  const std::vector<double> t{0.5, 1, 4, 10};
  const auto n = cj::n_from_lambda(lam, t);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(n.curve.values()[i], t[i] * t[i] / 16, 1e-3);
}

TEST(NFromLambda, RoundTripReproducesBeta) {
  auto beta = [](double t) { return 2.0 * std::pow(t, -1.0); };
  const auto lam = cj::lambda_from_beta(beta, ub::linear_grid(-5, 200, 4097));
  const auto inv = ub::log_grid(0.1, 10, 20);
  const auto n = cj::n_from_lambda(lam.curve, inv);
  const auto back = cj::beta_from_n(n.curve);
  // Compared on the tabulated abscissae, away from interpolation error.
  for (std::size_t i = 0; i < back.size(); ++i) {
    const double t = back.abscissae()[i];
    EXPECT_NEAR(back.values()[i] / beta(t), 1.0, 1e-3) << t;
  }
}

TEST(NFromLambda, FenchelInequality) {
  auto beta = [](double t) { return std::pow(t, -0.5); };
  const auto y = ub::linear_grid(-5, 50, 1101);
  const auto lam = cj::lambda_from_beta(beta, y);
  const std::vector<double> t{0.5, 1, 2, 4, 8};
  const auto n = cj::n_from_lambda(lam.curve, t);
  for (std::size_t j = 0; j < t.size(); ++j) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      EXPECT_LE(t[j] * y[i] / 2, lam.curve.values()[i] + n.curve.values()[j] + 1e-9);
    }
  }
}

TEST(CaseA, PolynomialBoundGivesClassicalNashExponent) {
  for (double n : {2.0, 4.0}) {
    const auto x = ub::log_grid(10, 1e4, 30);
    const auto r = cj::b_case_transform(cj::NashCase::A, [=](double t) { return std::pow(t, -n / 2); }, x);
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(r.curve.values()[i]));
    }
    EXPECT_NEAR(ub::fit_line(lx, ly).slope, 1 + 2 / n, 1e-6);
  }
}

TEST(CaseA, ConstantBoundThreshold) {
  const std::vector<double> x{0.5, 0.9, 1.1, 3.0};
  const auto r = cj::b_case_transform(cj::NashCase::A, [](double) { return 1.0; }, x);
  EXPECT_NEAR(r.curve.values()[0], 0.0, 1e-8);
  EXPECT_NEAR(r.curve.values()[1], 0.0, 1e-8);
  EXPECT_TRUE(std::isinf(r.curve.values()[2]));
  EXPECT_TRUE(std::isinf(r.curve.values()[3]));
}

TEST(OneExp, ClosedFormAgreesWithCaseB) {
  for (double g : {0.5, 1.0, 2.0}) {
    for (double c1 : {1.0, 3.0}) {
      const double c2 = 1.5;
      const auto cf = cj::one_exp_closed_form(c1, c2, g);
      auto b1 = [=](double t) { return 0.5 * (std::log(c1) + c2 * std::pow(t, -g)); };
      const auto x = ub::log_grid(10, 1e6, 12);
      const auto r = cj::b_case_transform(cj::NashCase::B, b1, x);
      for (std::size_t i = 0; i < x.size(); ++i) {
        EXPECT_NEAR(r.curve.values()[i] / cf.B(x[i]), 1.0, 1e-8) << "gamma=" << g << " x=" << x[i];
      }
    }
  }
}

TEST(OneExp, ConstantsFromStationaryPoint) {
  const auto cf = cj::one_exp_closed_form(4.0, 1.0, 1.0);
  EXPECT_NEAR(cf.k1, std::log(4.0) / 2, 1e-15);
  EXPECT_NEAR(cf.beta_const, 2.0, 1e-14);
  // gamma = 1, c1 = 1: D(x) = x^2 / (2 c2).
  const auto q = cj::one_exp_closed_form(1.0, 3.0, 1.0);
  for (double x : {0.5, 2.0, 7.0}) EXPECT_NEAR(q.D(x), x * x / 6.0, 1e-12 * x * x);
}

TEST(OneExp, DenseOracle) {
  const double c1 = 2.0;
  const double c2 = 0.7;
  const double g = 0.5;
  const auto cf = cj::one_exp_closed_form(c1, c2, g);
  for (double x : {1.0, 5.0, 40.0}) {
    const double ref = oracle::sup_dense(
        [=](double s) { return s * x - (0.5 * std::log(c1) * s + 0.5 * c2 * std::pow(s, 1 + g)); },
        1e-6, 1e6);
    EXPECT_NEAR(cf.D(x) / ref, 1.0, 1e-9);
  }
}

TEST(WeakSobolev, InversePairAndValueAtZero) {
  const auto ws = cj::weak_sobolev_D(3.0, 2.0);
  EXPECT_DOUBLE_EQ(ws.D(0.0), ws.c_prime);
  for (double y : ub::linear_grid(-3, 10, 27)) EXPECT_NEAR(ws.D_inv(ws.D(y)), y, 1e-12 * std::max(1.0, std::abs(y)));
}

TEST(WeakSobolev, AgreesWithDTransform) {
  for (double n : {1.0, 2.0, 4.0}) {
    const double c = 1.7;
    const auto ws = cj::weak_sobolev_D(n, c);
    auto b1 = [=](double t) { return 0.5 * std::log(c * std::pow(t, -n / 2)); };
    const auto y = ub::linear_grid(-2, 10, 25);
    const auto r = cj::d_transform(b1, y);
    for (std::size_t i = 0; i < y.size(); ++i) {
      EXPECT_NEAR(r.curve.values()[i] / ws.D(y[i]), 1.0, 1e-6) << "n=" << n << " y=" << y[i];
    }
  }
}

TEST(Conjugates, ConvexAndNondecreasing) {
  const auto y = ub::linear_grid(0, 40, 81);
  const auto r = cj::lambda_from_beta([](double t) { return std::pow(t, -1.0) + 0.3; }, y);
  EXPECT_LE(cj::max_convexity_violation(r.curve), 1e-9);
  for (std::size_t i = 1; i < y.size(); ++i) EXPECT_GE(r.curve.values()[i], r.curve.values()[i - 1] - 1e-12);
}
