// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include "ultrabound/rk4.hpp"

#include <algorithm>
#include <cmath>

#include "ultrabound/error.hpp"

namespace ultrabound::ode {

double rk4_step(const Rhs& f, double x, double y, double h) {
  const double k1 = f(x, y);
  const double k2 = f(x + 0.5 * h, y + 0.5 * h * k1);
  const double k3 = f(x + 0.5 * h, y + 0.5 * h * k2);
  const double k4 = f(x + h, y + h * k3);
  return y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
}

Rk4Sweep rk4_sweep(const Rhs& f, double x0, double y0, std::span<const double> targets,
                   const Rk4Options& opts) {
  Rk4Sweep out;
  out.values.reserve(targets.size());
  if (targets.empty()) return out;
  const double dir = targets.back() >= x0 ? 1.0 : -1.0;
  double x = x0;
  double y = y0;
  double h = opts.initial_step;
  for (double target : targets) {
    if ((target - x) * dir < 0.0) throw DomainError("rk4_sweep: targets not monotone");
    while ((target - x) * dir > 0.0) {
      if (++out.steps > opts.max_steps) {
        out.underflow = true;
        return out;
      }
      const double remaining = std::abs(target - x);
      const bool last = h >= remaining;
      const double step = std::min(h, remaining);
      // Step doubling: one full step against two half steps.
      const double full = rk4_step(f, x, y, dir * step);
      const double half = rk4_step(f, x, y, 0.5 * dir * step);
      const double two = rk4_step(f, x + 0.5 * dir * step, half, 0.5 * dir * step);
      const double err = std::abs(two - full) / 15.0;
      const double scale = opts.rel_tol * std::max(std::abs(two), opts.abs_floor);
      if (!std::isfinite(two) || err > scale) {
        h = step * (std::isfinite(err) && err > 0.0
                        ? std::max(0.1, 0.9 * std::pow(scale / err, 0.2))
                        : 0.1);
        if (h < opts.min_step) {
          out.underflow = true;
          return out;
        }
        continue;
      }
      x = last ? target : x + dir * step;
      // Richardson-corrected value.
      y = two + (two - full) / 15.0;
      const double grow = err > 0.0 ? std::min(4.0, 0.9 * std::pow(scale / err, 0.2)) : 4.0;
      if (!last) h = step * grow;
      else h = std::max(h, step * grow);
    }
    out.values.push_back(y);
    ++out.reached;
  }
  return out;
}

}  // namespace ultrabound::ode
