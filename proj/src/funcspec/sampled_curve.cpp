// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include "ultrabound/sampled_curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ultrabound/error.hpp"

namespace ultrabound {

std::string_view to_string(Interp interp) {
  switch (interp) {
    case Interp::linear:
      return "linear";
    case Interp::log_linear:
      return "log-linear";
  }
  return "linear";
}

Interp interp_from_string(std::string_view name) {
  if (name == "linear") return Interp::linear;
  if (name == "log-linear" || name == "log_linear") return Interp::log_linear;
  throw DomainError("unknown interpolation rule '" + std::string(name) + "'");
}

SampledCurve::SampledCurve(std::vector<double> abscissae, std::vector<double> values,
                           Interp interp)
    : x_(std::move(abscissae)), y_(std::move(values)), interp_(interp) {
  if (x_.size() != y_.size()) {
    throw DomainError("sampled curve: abscissae and values differ in length");
  }
  if (x_.empty()) throw DomainError("sampled curve: empty");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i])) throw DomainError("sampled curve: non-finite abscissa");
    if (std::isnan(y_[i])) throw DomainError("sampled curve: NaN value");
    if (i > 0 && !(x_[i] > x_[i - 1])) {
      throw DomainError("sampled curve: abscissae not strictly increasing");
    }
  }
  if (interp_ == Interp::log_linear && x_.front() <= 0.0) {
    throw DomainError("sampled curve: log-linear interpolation needs positive abscissae");
  }
}

bool SampledCurve::contains(double x) const noexcept {
  return !x_.empty() && x >= x_.front() && x <= x_.back();
}

double SampledCurve::operator()(double x) const {
  if (!contains(x)) {
    throw OutOfHullError("sampled curve: x=" + std::to_string(x) + " outside [" +
                         std::to_string(x_.front()) + ", " + std::to_string(x_.back()) + "]");
  }
  auto it = std::lower_bound(x_.begin(), x_.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - x_.begin());
  if (x_[hi] == x) return y_[hi];
  std::size_t lo = hi - 1;
  const double y0 = y_[lo];
  const double y1 = y_[hi];
  if (!std::isfinite(y0) || !std::isfinite(y1)) {
    // An infinite sentinel poisons its whole interval.
    return std::isfinite(y0) ? y1 : y0;
  }
  if (interp_ == Interp::log_linear && y0 > 0.0 && y1 > 0.0) {
    const double w = std::log(x / x_[lo]) / std::log(x_[hi] / x_[lo]);
    return std::exp((1.0 - w) * std::log(y0) + w * std::log(y1));
  }
  const double w = (x - x_[lo]) / (x_[hi] - x_[lo]);
  return (1.0 - w) * y0 + w * y1;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n == 0) throw DomainError("grid: zero points");
  if (!(hi >= lo)) throw DomainError("grid: hi < lo");
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + h * static_cast<double>(i);
  g.back() = hi;
  return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0)) throw DomainError("log grid: lower bound must be positive");
  auto g = linear_grid(std::log(lo), std::log(hi), n);
  for (auto& v : g) v = std::exp(v);
  g.front() = lo;
  if (n > 1) g.back() = hi;
  return g;
}

std::vector<double> log_grid_per_decade(double lo, double hi, std::size_t per_decade) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("log grid: need 0 < lo < hi");
  const double decades = std::log10(hi / lo);
  const auto n = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(per_decade))) + 1;
  return log_grid(lo, hi, n);
}

}  // namespace ultrabound
