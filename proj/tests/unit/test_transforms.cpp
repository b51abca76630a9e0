// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ultrabound/error.hpp"
#include "ultrabound/function_spec.hpp"
#include "ultrabound/pipeline.hpp"
#include "ultrabound/sampled_curve.hpp"
#include "ultrabound/transforms.hpp"

namespace ub = ultrabound;
namespace tr = ultrabound::transforms;

TEST(MEta, PowerClosedForm) {
  const auto t = ub::log_grid(1e-2, 1e2, 17);
  for (double eta : {0.0, 1.0, 3.0}) {
    const double c = 1.5;
    const double a = 0.75;
    const auto r = tr::m_eta([=](double s) { return c * std::pow(s, -a); }, eta, t);
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_NEAR(r.curve.values()[i] / oracle::m_eta_power(c, a, eta, t[i]), 1.0, 1e-9);
    }
  }
}

TEST(MEta, ConstantIsFixed) {
  const auto t = ub::log_grid(1e-2, 1e2, 9);
  for (double eta : {-0.5, 0.0, 2.0}) {
    const auto r = tr::m_eta([](double) { return 3.0; }, eta, t);
    for (double v : r.curve.values()) EXPECT_NEAR(v, 3.0, 1e-11);
  }
}

TEST(MEta, ExponentialDiverges) {
  const auto t = ub::log_grid(1e-2, 1e2, 9);
  const auto r = tr::m_eta([](double s) { return std::exp(1.0 / s); }, 2.0, t);
  EXPECT_EQ(r.report.divergent_count(), t.size());
}

TEST(MEta, RejectsEtaAtMinusOne) {
  const std::vector<double> t{1.0};
  EXPECT_THROW(tr::m_eta([](double) { return 1.0; }, -1.0, t), ub::DomainError);
}

TEST(HTransform, ConstantAndPower) {
  const auto t = ub::log_grid(0.1, 10, 7);
  const auto h = tr::h_transform([](double) { return 2.0; }, 1.0, 0.8, t);
  for (double v : h.curve.values()) EXPECT_NEAR(v, 2 * 0.8 * 2.0 / 2.0, 1e-12);
  const auto p = tr::h_transform([](double s) { return std::pow(s, -0.5); }, 1.0, 0.7, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR(p.curve.values()[i] / oracle::h_power(1, 0.5, 1, 0.7, t[i]), 1.0, 1e-9);
  }
}

TEST(HTransform, IncreasingInLambda) {
  const auto t = ub::log_grid(0.1, 10, 15);
  auto b = [](double s) { return 1.0 + std::pow(s, -0.5); };
  const auto lo = tr::h_transform(b, 0.0, 0.5, t);
  const auto hi = tr::h_transform(b, 0.0, 1.0, t);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_LE(lo.curve.values()[i], hi.curve.values()[i]);
}

TEST(HTransform, TwiceMEtaAfterChangeOfVariables) {
  // lambda = (eta+1)/2 and b(t) = 2 beta(t/2) give H = 2 M_eta.
  const auto t = ub::log_grid(0.1, 10, 9);
  const double eta = 1.0;
  auto beta = [](double s) { return 1.0 + std::pow(s, -0.3); };
  const auto m = tr::m_eta(beta, eta, t);
  const auto h = tr::h_transform([&](double s) { return 2.0 * beta(s / 2.0); }, eta, (eta + 1) / 2, t);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(h.curve.values()[i] / (2 * m.curve.values()[i]), 1.0, 1e-10);
}

TEST(Coulhon, PolynomialNash) {
  const auto t = ub::log_grid(1e-3, 1.0, 20);
  for (double n : {1.0, 2.0, 4.0}) {
    const auto r = tr::coulhon_invert_log([=](double u) { return (2 / n) * u; }, 0.0, t);
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_NEAR(r.curve.values()[i] / oracle::coulhon_power(n, t[i]), 1.0, 1e-8) << n;
    }
  }
}

TEST(Coulhon, SquareIsSelfInverse) {
  const auto t = ub::log_grid(1e-2, 10, 9);
  const auto r = tr::coulhon_invert([](double x) { return x * x; }, 0.0, t);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(r.curve.values()[i] * t[i], 1.0, 1e-8);
}

TEST(Coulhon, XLogSquared) {
  // Theta(x) = x log^2 x on [e, inf): p(t) = 1/log t, m(t) = e^(1/t).
  const auto t = ub::log_grid(0.05, 0.9, 9);
  const auto r = tr::coulhon_invert_log([](double u) { return 2 * std::log(u); }, std::exp(1.0), t);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(std::log(r.curve.values()[i]) * t[i], 1.0, 1e-8);
}

TEST(Coulhon, NonIntegrableTailThrows) {
  const auto t = ub::log_grid(0.1, 1, 3);
  EXPECT_THROW(tr::coulhon_invert_log([](double) { return 0.0; }, 1.0, t), ub::DivergenceError);
}

TEST(Ultrabound, SquareB) {
  const auto t = ub::log_grid(0.01, 0.9, 9);
  const auto r = tr::ultrabound_from_B([](double y) { return y * y; }, 1.0, t);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(r.curve.values()[i] * t[i], 1.0, 1e-8);
}

TEST(Ultrabound, LogTailMatchesQuadrature) {
  // B(y) = y log(y)^2: q(s) = 1 / log s.
  const auto t = ub::log_grid(0.05, 0.5, 6);
  const auto r = tr::ultrabound_from_log_B(
      [](double y) { return std::log(y) + 2 * std::log(std::log(y)); }, std::exp(1.0), t);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(std::log(r.curve.values()[i]) * t[i], 1.0, 1e-7);
}

TEST(Ultrabound, OneExpClosesToSameOrder) {
  for (double g : {0.5, 1.0}) {
    const auto c = ub::pipeline::beta_to_m([=](double t) { return std::pow(t, -g); }, ub::log_grid(0.01, 1, 12));
    EXPECT_NEAR(c.slope.slope, -g, 0.05 * g);
  }
}

TEST(Pipeline, RoundTrip) {
  const auto r = ub::pipeline::beta_round_trip([](double t) { return std::pow(t, -0.5); },
                                               ub::log_grid(0.1, 10, 20), ub::linear_grid(-5, 200, 4097));
  EXPECT_EQ(r.divergent, 0u);
  EXPECT_LT(r.max_rel_diff, 1e-3);
}
