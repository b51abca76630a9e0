// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ultrabound::ode {

/// Right-hand side y' = f(x, y) of a scalar ODE.
using Rhs = std::function<double(double, double)>;

struct Rk4Options {
  /// Local error target per step, relative to max(|y|, abs_floor).
  double rel_tol = 1e-12;
  double abs_floor = 1e-12;
  double initial_step = 1e-3;
  /// Steps smaller than this abort the sweep (stiff region).
  double min_step = 1e-14;
  long max_steps = 5'000'000;
};

struct Rk4Sweep {
  /// y at each requested target, in target order. Targets not reached after a
  /// step-size underflow are left out; `reached` counts the ones filled.
  std::vector<double> values;
  std::size_t reached = 0;
  bool underflow = false;
  long steps = 0;
};

/// Classical fourth-order Runge-Kutta with step doubling. Integrates from
/// (x0, y0) through `targets`, which must be monotone away from x0 (all
/// increasing for a forward sweep, all decreasing for a backward sweep).
Rk4Sweep rk4_sweep(const Rhs& f, double x0, double y0, std::span<const double> targets,
                   const Rk4Options& opts = {});

/// One classical RK4 step of size h (h may be negative).
double rk4_step(const Rhs& f, double x, double y, double h);

}  // namespace ultrabound::ode
