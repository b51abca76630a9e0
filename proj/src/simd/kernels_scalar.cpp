// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_internal.hpp"

namespace ultrabound::simd::detail {
namespace {

double reduce_sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double sum_squares(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double sum_abs(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i]);
  return s;
}

double reduce_max(const double* x, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double reduce_min(const double* x, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squared_diff(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void clamp_band(const double* src, double lo, double width, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = std::min(std::max(src[i] - lo, 0.0), width);
}

}  // namespace

const Kernels kScalar = {reduce_sum, sum_squares,      sum_abs,   reduce_max,
                         reduce_min, dot, sum_squared_diff, clamp_band};

}  // namespace ultrabound::simd::detail
