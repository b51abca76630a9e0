// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ultrabound {

enum class Interp {
  linear,
  /// log(value) is interpolated linearly in log(abscissa); exact on power laws.
  /// Requires positive abscissae and positive values on the interval used.
  log_linear,
};

std::string_view to_string(Interp interp);
Interp interp_from_string(std::string_view name);

/// Numeric carrier for every transform output: strictly increasing abscissae,
/// matching values, and an interpolation rule.
///
/// Values may hold +/-inf (divergence sentinels). Queries outside
/// [front, back] throw OutOfHullError; there is no extrapolation.
class SampledCurve {
 public:
  SampledCurve() = default;
  SampledCurve(std::vector<double> abscissae, std::vector<double> values,
               Interp interp = Interp::linear);

  double operator()(double x) const;

  bool contains(double x) const noexcept;
  std::size_t size() const noexcept { return x_.size(); }
  bool empty() const noexcept { return x_.empty(); }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  Interp interp() const noexcept { return interp_; }

  std::span<const double> abscissae() const noexcept { return x_; }
  std::span<const double> values() const noexcept { return y_; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  Interp interp_ = Interp::linear;
};

/// Uniform grid with n points on [lo, hi] (n == 1 gives {lo}).
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

/// Geometric grid with n points on [lo, hi], 0 < lo <= hi.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// Geometric grid with `per_decade` points per decade covering [lo, hi].
std::vector<double> log_grid_per_decade(double lo, double hi, std::size_t per_decade);

}  // namespace ultrabound
