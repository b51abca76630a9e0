// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>

#include "ultrabound/error.hpp"
#include "ultrabound/pipeline.hpp"

namespace ultrabound::pipeline {
namespace {

// Lambda is nondecreasing; returns the point where it turns positive.
double positivity_edge(const ScalarFn& lambda) {
  double lo = 0.0;
  double hi = 0.0;
  if (lambda(0.0) > 0.0) {
    double step = 1.0;
    lo = -step;
    while (lambda(lo) > 0.0) {
      hi = lo;
      step *= 2.0;
      lo = -step;
      if (step > 1e6) throw DomainError("pipeline: Lambda stays positive far to the left");
    }
  } else {
    double step = 1.0;
    hi = step;
    while (!(lambda(hi) > 0.0)) {
      lo = hi;
      step *= 2.0;
      hi = step;
      if (step > 1e6) throw DomainError("pipeline: Lambda never turns positive");
    }
  }
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    (lambda(mid) > 0.0 ? hi : lo) = mid;
  }
  return lo;
}

}  // namespace

RoundTrip beta_round_trip(const ScalarFn& beta, std::span<const double> t_grid,
                          std::span<const double> y_grid) {
  if (t_grid.empty() || y_grid.size() < 3) throw DomainError("pipeline: empty grid");
  const conjugate::ConjugateResult lam = conjugate::lambda_from_beta(beta, y_grid);
  // beta(t) = t N(1/t): N is needed on the reciprocal grid.
  std::vector<double> inv;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw DomainError("pipeline: t must be positive");
    inv.push_back(1.0 / t);
  }
  std::sort(inv.begin(), inv.end());
  const conjugate::ConjugateResult n = conjugate::n_from_lambda(lam.curve, inv);
  const SampledCurve back = conjugate::beta_from_n(n.curve);

  RoundTrip out;
  for (double t : t_grid) {
    const double b_in = beta(t);
    const double b_out = back(t);
    out.t.push_back(t);
    out.beta_in.push_back(b_in);
    out.beta_out.push_back(b_out);
    double d = std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(b_in) && std::isfinite(b_out)) {
      d = std::abs(b_out / b_in - 1.0);
      out.max_rel_diff = std::max(out.max_rel_diff, d);
    } else {
      ++out.divergent;
    }
    out.rel_diff.push_back(d);
  }
  return out;
}

Closure beta_to_m(const ScalarFn& beta, std::span<const double> t_grid,
                  const transforms::InvertOptions& opts) {
  const ScalarFn lambda = conjugate::lambda_evaluator(beta);
  Closure out;
  out.m = transforms::ultrabound_from_B(lambda, positivity_edge(lambda), t_grid, opts, "Lambda");
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < out.m.curve.size(); ++i) {
    const double v = out.m.curve.values()[i];
    if (v > 0.0 && std::isfinite(v)) {
      x.push_back(std::log(out.m.curve.abscissae()[i]));
      y.push_back(std::log(v));
    }
  }
  if (x.size() >= 2) out.slope = fit_line(x, y);
  return out;
}

}  // namespace ultrabound::pipeline
