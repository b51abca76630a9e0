// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include "ultrabound/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "ultrabound/error.hpp"

namespace ultrabound::quad {
namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool finite;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const ScalarFn& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  bool finite = std::isfinite(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    finite = finite && std::isfinite(f1) && std::isfinite(f2);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  Panel p{a, b, kronrod * half, std::abs((kronrod - gauss) * half), finite};
  if (!finite) {
    p.value = std::numeric_limits<double>::infinity();
    p.error = std::numeric_limits<double>::infinity();
  }
  return p;
}

}  // namespace

Result integrate(const ScalarFn& f, double a, double b, const Options& opts) {
  Result r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  if (!(b > a)) throw DomainError("integrate: need a < b");
  std::priority_queue<Panel> queue;
  Panel first = gk15(f, a, b);
  r.panels = 1;
  if (!first.finite) {
    r.finite = false;
    r.value = first.value;
    r.error = first.error;
    return r;
  }
  double total = first.value;
  double err = first.error;
  queue.push(first);
  while (err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (r.panels + 2 > opts.max_panels) {
      r.value = total;
      r.error = err;
      return r;
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in floating point.
      queue.push(worst);
      r.value = total;
      r.error = err;
      return r;
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    r.panels += 2;
    if (!left.finite || !right.finite) {
      r.finite = false;
      r.value = std::numeric_limits<double>::infinity();
      r.error = std::numeric_limits<double>::infinity();
      return r;
    }
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  total = 0.0;
  err = 0.0;
  while (!queue.empty()) {
    total += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  r.value = total;
  r.error = err;
  r.converged = true;
  return r;
}

Result integrate_to_infinity(const ScalarFn& f, double a, const TailOptions& opts) {
  Result r;
  double lo = a;
  double width = 1.0;
  double total = 0.0;
  double err = 0.0;
  while (lo - a < opts.max_extent) {
    Result chunk = integrate(f, lo, lo + width, opts.panel);
    r.panels += chunk.panels;
    if (!chunk.finite) {
      r.finite = false;
      r.value = std::numeric_limits<double>::infinity();
      r.error = std::numeric_limits<double>::infinity();
      return r;
    }
    total += chunk.value;
    err += chunk.error;
    if (!chunk.converged) {
      r.value = total;
      r.error = std::max(err, std::abs(total));
      return r;
    }
    const double scale = std::max(opts.panel.abs_tol, opts.panel.rel_tol * std::abs(total));
    if (std::abs(chunk.value) <= scale && lo > a) {
      r.value = total;
      // The last chunk doubles as the tail estimate.
      r.error = err + std::abs(chunk.value);
      r.converged = true;
      return r;
    }
    lo += width;
    width *= 2.0;
  }
  r.value = total;
  r.error = std::max(err, std::abs(total));
  return r;
}

Result integrate_weighted_from_zero(const ScalarFn& g, double eta, double t,
                                    const TailOptions& opts) {
  if (!(eta > -1.0)) throw DomainError("weighted integral: eta must exceed -1");
  if (!(t > 0.0)) throw DomainError("weighted integral: t must be positive");
  const double rate = eta + 1.0;
  auto integrand = [&](double v) {
    const double w = std::exp(-rate * v);
    if (w == 0.0) return 0.0;
    const double s = t * std::exp(-v);
    if (s == 0.0) return std::numeric_limits<double>::infinity();
    return w * g(s);
  };
  Result r = integrate_to_infinity(integrand, 0.0, opts);
  const double scale = std::pow(t, rate);
  r.value *= scale;
  r.error *= scale;
  return r;
}

}  // namespace ultrabound::quad
