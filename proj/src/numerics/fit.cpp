// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include "ultrabound/fit.hpp"

#include <cmath>

#include "ultrabound/error.hpp"

namespace ultrabound {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw DomainError("fit_line: need at least two matching points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_line: abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  int changes = 0;
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
    if (i > 0 && r * prev < 0.0) ++changes;
    prev = r;
  }
  f.rms = std::sqrt(ss / static_cast<double>(n));
  f.sign_change_rate = n > 2 ? changes / static_cast<double>(n - 1) : 1.0;
  return f;
}

}  // namespace ultrabound
