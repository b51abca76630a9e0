// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

namespace ultrabound {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual.
  double rms = 0.0;
  /// Sign changes of the residual sequence over its length minus one. Small
  /// values mean the residuals bend systematically rather than scatter.
  double sign_change_rate = 0.0;
};

/// Ordinary least squares y = slope x + intercept. Needs two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace ultrabound
