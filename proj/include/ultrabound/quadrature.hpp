// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ultrabound/function_spec.hpp"

namespace ultrabound::quad {

struct Options {
  double abs_tol = 1e-15;
  double rel_tol = 1e-12;
  /// Hard budget on Gauss-Kronrod panels. Running out is reported as
  /// non-convergence, never silently accepted.
  int max_panels = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
  bool converged = false;
  /// False when the integrand produced inf/NaN at a node.
  bool finite = true;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on the finite interval [a, b].
Result integrate(const ScalarFn& f, double a, double b, const Options& opts = {});

struct TailOptions {
  Options panel{};
  /// Integration stops (unconverged) once the covered extent b - a exceeds this.
  double max_extent = 4096.0;
};

/// Integral of f over [a, inf), taken as a sum of chunks of doubling width
/// [a, a+1], [a+1, a+3], ... The integral is declared convergent once the last
/// chunk is negligible against the running total; reaching `max_extent` or a
/// non-finite integrand value means divergence.
Result integrate_to_infinity(const ScalarFn& f, double a, const TailOptions& opts = {});

/// Weighted integral of s^eta g(s) over (0, t], eta > -1, through
/// s = t e^-v:  t^(eta+1) * int_0^inf e^{-(eta+1) v} g(t e^{-v}) dv.
/// Integrable power singularities at 0 become exponentially decaying tails.
Result integrate_weighted_from_zero(const ScalarFn& g, double eta, double t,
                                    const TailOptions& opts = {});

}  // namespace ultrabound::quad
