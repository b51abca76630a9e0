// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <string>

#include "ultrabound/error.hpp"
#include "ultrabound/torus.hpp"

namespace ultrabound::torus {
namespace {

// sum_{n>=1} exp(-n^2 q), stopped once a term drops below 1e-17 of the
// first; compensated summation.
double half_tail(double q) {
  const double first = std::exp(-q);
  double sum = 0.0;
  double comp = 0.0;
  for (double n = 1.0;; n += 1.0) {
    const double term = n == 1.0 ? first : std::exp(-n * n * q);
    if (term == 0.0) break;
    const double t = sum + term;
    comp += std::abs(sum) >= term ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if (term < 1e-17 * first) break;
  }
  return sum + comp;
}

void require_positive(double s) {
  if (!(s > 0.0)) throw DomainError("theta: s must be positive, got " + std::to_string(s));
}

}  // namespace

double theta_direct(double s) {
  require_positive(s);
  return 1.0 + 2.0 * half_tail(s);
}

double theta_poisson(double s) {
  require_positive(s);
  const double pi = std::numbers::pi;
  return std::sqrt(pi / s) * (1.0 + 2.0 * half_tail(pi * pi / s));
}

double theta(double s) { return s >= 1.0 ? theta_direct(s) : theta_poisson(s); }

double log_theta(double s) {
  require_positive(s);
  if (s >= 1.0) return std::log1p(2.0 * half_tail(s));
  const double pi = std::numbers::pi;
  return 0.5 * std::log(pi / s) + std::log1p(2.0 * half_tail(pi * pi / s));
}

}  // namespace ultrabound::torus
