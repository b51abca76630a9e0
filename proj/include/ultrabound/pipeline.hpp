// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end compositions of the conjugate and transform stages, starting
// from an LSI parameter beta.

#pragma once

#include <span>
#include <vector>

#include "ultrabound/conjugate.hpp"
#include "ultrabound/fit.hpp"
#include "ultrabound/function_spec.hpp"
#include "ultrabound/transforms.hpp"

namespace ultrabound::pipeline {

/// beta -> Lambda (tabulated on y_grid) -> N -> beta again, compared on
/// t_grid.
struct RoundTrip {
  std::vector<double> t;
  std::vector<double> beta_in;
  std::vector<double> beta_out;
  /// |beta_out / beta_in - 1|, NaN where either side is not finite.
  std::vector<double> rel_diff;
  double max_rel_diff = 0.0;
  std::size_t divergent = 0;
};

RoundTrip beta_round_trip(const ScalarFn& beta, std::span<const double> t_grid,
                          std::span<const double> y_grid);

/// beta -> Lambda (pointwise) -> M through q(s) = int_s^inf dy / Lambda(y),
/// with the slope of log M against log t.
struct Closure {
  transforms::TransformResult m;
  LineFit slope;
};

Closure beta_to_m(const ScalarFn& beta, std::span<const double> t_grid,
                  const transforms::InvertOptions& opts = {});

}  // namespace ultrabound::pipeline
