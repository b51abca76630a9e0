// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include "ultrabound/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ultrabound/error.hpp"

namespace ultrabound::conjugate {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498948482;

double sanitize(double v) { return std::isnan(v) ? -kInf : v; }

struct Scan {
  std::vector<double> s;
  std::vector<double> g;
};

Scan scan(const ScalarFn& g, double lo, double hi, int points, Scale scale) {
  Scan out;
  out.s = scale == Scale::log ? log_grid(lo, hi, static_cast<std::size_t>(points))
                              : linear_grid(lo, hi, static_cast<std::size_t>(points));
  out.g.reserve(out.s.size());
  for (double s : out.s) out.g.push_back(sanitize(g(s)));
  return out;
}

// Two local maxima separated by a significant dip mean the bracket is ambiguous.
void require_unimodal(const Scan& sc, double label) {
  double vmax = -kInf;
  for (double v : sc.g) vmax = std::max(vmax, v);
  if (!std::isfinite(vmax)) return;
  const double tol = 1e-8 * (std::abs(vmax) + 1.0);
  // States: 0 = rising, 1 = fallen after a peak.
  int state = 0;
  double peak = -kInf;
  double trough = kInf;
  for (double v : sc.g) {
    if (state == 0) {
      if (v >= peak) {
        peak = v;
      } else if (peak - v > tol) {
        state = 1;
        trough = v;
      }
    } else {
      trough = std::min(trough, v);
      if (v - trough > tol && std::isfinite(trough)) {
        throw NotUnimodalError("sup scan: objective not unimodal on the scan grid at x=" +
                               std::to_string(label));
      }
    }
  }
}

std::size_t argmax_index(const std::vector<double>& g) {
  return static_cast<std::size_t>(std::max_element(g.begin(), g.end()) - g.begin());
}

// Golden-section search for the max of g on [a, b]. In log scale the search
// variable is log s.
std::pair<double, double> golden(const ScalarFn& g, double a, double b, double rel_width,
                                 Scale scale) {
  const bool use_log = scale == Scale::log;
  auto to_s = [use_log](double u) { return use_log ? std::exp(u) : u; };
  double lo = use_log ? std::log(a) : a;
  double hi = use_log ? std::log(b) : b;
  const double width_target =
      use_log ? rel_width : rel_width * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = sanitize(g(to_s(x1)));
  double f2 = sanitize(g(to_s(x2)));
  int guard = 0;
  while (hi - lo > width_target && ++guard < 400) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = sanitize(g(to_s(x2)));
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = sanitize(g(to_s(x1)));
    }
  }
  return f1 >= f2 ? std::pair{to_s(x1), f1} : std::pair{to_s(x2), f2};
}

SupPoint refine(const ScalarFn& g, const Scan& sc, std::size_t i, const ScanOptions& opts) {
  SupPoint p;
  p.argmax = sc.s[i];
  p.value = sc.g[i];
  if (!std::isfinite(p.value)) return p;
  const std::size_t lo = i == 0 ? 0 : i - 1;
  const std::size_t hi = std::min(i + 1, sc.s.size() - 1);
  if (lo == hi) return p;
  auto [s_star, v_star] = golden(g, sc.s[lo], sc.s[hi], opts.rel_width, opts.scale);
  if (v_star > p.value) {
    p.value = v_star;
    p.argmax = s_star;
  }
  return p;
}

bool rising_at_end(const Scan& sc) {
  const std::size_t n = sc.g.size();
  return n >= 2 && sc.g[n - 1] > sc.g[n - 2];
}

}  // namespace

SupPoint maximize(const ScalarFn& g, const ScanOptions& opts, double label) {
  if (opts.points < 3) throw DomainError("sup scan: need at least 3 scan points");
  if (opts.scale == Scale::log && !(opts.lo > 0.0)) {
    throw DomainError("sup scan: log scale needs a positive lower bound");
  }
  if (!(opts.hi > opts.lo)) throw DomainError("sup scan: empty domain");

  Scan sc = scan(g, opts.lo, opts.hi, opts.points, opts.scale);
  for (double v : sc.g) {
    if (v == kInf) {
      SupPoint p;
      p.divergent = true;
      p.value = kInf;
      return p;
    }
  }
  require_unimodal(sc, label);
  std::size_t i = argmax_index(sc.g);

  if (opts.scale == Scale::linear) {
    SupPoint p = refine(g, sc, i, opts);
    p.at_lower = i == 0;
    p.at_upper = i + 1 == sc.s.size();
    return p;
  }

  // Upper boundary: extend the log-extent; still rising after the last
  // extension means the sup is +inf.
  if (i + 1 == sc.s.size() && rising_at_end(sc)) {
    double hi = opts.hi;
    for (int k = 0; k < opts.max_doublings; ++k) {
      const double new_hi = hi >= 1.0 ? hi * hi : 1.0 / (hi * hi);
      Scan ext = scan(g, hi, std::max(new_hi, hi * 4.0), opts.points, Scale::log);
      require_unimodal(ext, label);
      const std::size_t j = argmax_index(ext.g);
      if (ext.g[j] == kInf) break;
      if (j + 1 < ext.s.size() || !rising_at_end(ext)) {
        SupPoint p = refine(g, ext, j, opts);
        return p;
      }
      hi = ext.s.back();
      sc = std::move(ext);
    }
    SupPoint p;
    p.divergent = true;
    p.value = kInf;
    p.argmax = sc.s.back();
    p.at_upper = true;
    return p;
  }

  // Lower boundary: the sup is a limit at s -> 0+. Shrink the domain and
  // watch the increments; increments that do not shrink mean +inf.
  if (i == 0 && sc.g.size() >= 2 && sc.g[0] > sc.g[1]) {
    double lo = opts.lo;
    double value = sc.g[0];
    double last_increment = kInf;
    for (int k = 0; k < opts.max_doublings; ++k) {
      const double new_lo = lo <= 1.0 ? lo * lo : 1.0 / lo;
      const double v = sanitize(g(new_lo));
      const double inc = v - value;
      if (inc <= 0.0) break;
      if (k > 0 && inc > 0.5 * last_increment &&
          inc > 1e-12 * (std::abs(value) + 1.0)) {
        SupPoint p;
        p.divergent = true;
        p.value = kInf;
        p.argmax = new_lo;
        p.at_lower = true;
        return p;
      }
      last_increment = inc;
      value = v;
      lo = new_lo;
    }
    SupPoint p;
    p.value = value;
    p.argmax = lo;
    p.at_lower = true;
    return p;
  }

  return refine(g, sc, i, opts);
}

ConjugateResult sup_transform(const Objective& objective, std::span<const double> x_grid,
                              const ScanOptions& opts) {
  if (x_grid.empty()) throw DomainError("sup transform: empty grid");
  std::vector<double> xs(x_grid.begin(), x_grid.end());
  std::vector<double> values;
  std::vector<double> args;
  ConjugateResult out;
  for (double x : xs) {
    SupPoint p = maximize([&](double s) { return objective(s, x); }, opts, x);
    values.push_back(p.value);
    args.push_back(p.argmax);
    if (p.divergent) out.divergent_points.push_back(x);
  }
  out.curve = SampledCurve(xs, std::move(values), Interp::linear);
  out.argmax = SampledCurve(std::move(xs), std::move(args), Interp::linear);
  return out;
}

ConjugateResult lambda_from_beta(const ScalarFn& beta, std::span<const double> y_grid,
                                 const ScanOptions& opts) {
  return sup_transform([&beta](double t, double y) { return t * y / 2.0 - t * beta(1.0 / t); },
                       y_grid, opts);
}

ScalarFn lambda_evaluator(ScalarFn beta, ScanOptions opts) {
  return [beta = std::move(beta), opts](double y) {
    return maximize([&](double t) { return t * y / 2.0 - t * beta(1.0 / t); }, opts, y).value;
  };
}

ConjugateResult n_from_lambda(const SampledCurve& lambda, std::span<const double> t_grid,
                              int scan_points) {
  if (t_grid.empty()) throw DomainError("n_from_lambda: empty grid");
  ScanOptions opts;
  opts.scale = Scale::linear;
  opts.lo = lambda.front();
  opts.hi = lambda.back();
  opts.points = scan_points;

  ConjugateResult out;
  std::vector<double> ts(t_grid.begin(), t_grid.end());
  std::vector<double> values;
  std::vector<double> args;
  for (double t : ts) {
    if (!(t > 0.0)) throw DomainError("n_from_lambda: t must be positive");
    SupPoint p = maximize([&](double y) { return t * y / 2.0 - lambda(y); }, opts, t);
    if (p.at_upper) {
      // Still increasing at the hull's upper end: unbounded as far as the
      // tabulation can tell.
      p.divergent = true;
      p.value = kInf;
      out.divergent_points.push_back(t);
    }
    values.push_back(p.value);
    args.push_back(p.argmax);
  }

  // (A1): Lambda does not fall toward the left end of the hull.
  // (A2): secant slopes keep increasing over the top quarter of the hull.
  const auto ys = lambda.abscissae();
  const auto ls = lambda.values();
  const std::size_t n = ys.size();
  out.hypotheses.checked = true;
  if (n >= 4) {
    const std::size_t left = std::max<std::size_t>(1, n / 4);
    const double left_slope = (ls[left] - ls[0]) / (ys[left] - ys[0]);
    out.hypotheses.bounded_left = left_slope >= -1e-12 || ls[0] >= 0.0;
    const std::size_t q = n - std::max<std::size_t>(2, n / 4);
    const double s1 = (ls[n - 2] - ls[q]) / (ys[n - 2] - ys[q]);
    const double s2 = (ls[n - 1] - ls[n - 2]) / (ys[n - 1] - ys[n - 2]);
    out.hypotheses.superlinear = s2 > s1 && s2 > 0.0;
  }
  out.curve = SampledCurve(ts, std::move(values), Interp::linear);
  out.argmax = SampledCurve(std::move(ts), std::move(args), Interp::linear);
  return out;
}

SampledCurve beta_from_n(const SampledCurve& n) {
  const auto ts = n.abscissae();
  const auto ns = n.values();
  std::vector<double> u;
  std::vector<double> beta;
  for (std::size_t i = ts.size(); i-- > 0;) {
    if (!(ts[i] > 0.0)) throw DomainError("beta_from_n: abscissae must be positive");
    u.push_back(1.0 / ts[i]);
    beta.push_back(ns[i] / ts[i]);
  }
  return SampledCurve(std::move(u), std::move(beta), Interp::linear);
}

ConjugateResult d_transform(const ScalarFn& b1, std::span<const double> y_grid,
                            const ScanOptions& opts) {
  return sup_transform([&b1](double s, double y) { return s * y - s * b1(1.0 / s); }, y_grid,
                       opts);
}

ScalarFn d_evaluator(ScalarFn b1, ScanOptions opts) {
  return [b1 = std::move(b1), opts](double y) {
    return maximize([&](double s) { return s * y - s * b1(1.0 / s); }, opts, y).value;
  };
}

ConjugateResult b_case_transform(NashCase nash_case, const ScalarFn& b1,
                                 std::span<const double> x_grid, const ScanOptions& opts) {
  for (double x : x_grid) {
    if (!(x > 0.0)) throw DomainError("b_case_transform: x must be positive");
  }
  if (nash_case == NashCase::A) {
    return sup_transform([&b1](double s, double x) { return s * x - s * b1(1.0 / s); }, x_grid,
                         opts);
  }
  // Case B: B(x) = x sup_s (s log(x)/2 - b(s)) = x D(log(x) / 2).
  ConjugateResult out = sup_transform(
      [&b1](double s, double x) { return s * 0.5 * std::log(x) - s * b1(1.0 / s); }, x_grid,
      opts);
  const auto xs = out.curve.abscissae();
  std::vector<double> scaled(out.curve.values().begin(), out.curve.values().end());
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] *= xs[i];
  out.curve = SampledCurve(std::vector<double>(xs.begin(), xs.end()), std::move(scaled),
                           Interp::linear);
  return out;
}

double OneExpClosedForm::b(double s) const {
  return 0.5 * std::log(c1) * s + 0.5 * c2 * std::pow(s, 1.0 + gamma);
}

double OneExpClosedForm::D(double x) const {
  const double u = x - k1;
  return u > 0.0 ? k * std::pow(u, exponent()) : 0.0;
}

double OneExpClosedForm::B(double x) const {
  if (!(x > 0.0)) throw DomainError("one-exp B: x must be positive");
  const double u = std::log(std::sqrt(x) / beta_const);
  return u > 0.0 ? k * x * std::pow(u, exponent()) : 0.0;
}

OneExpClosedForm one_exp_closed_form(double c1, double c2, double gamma) {
  if (!(c1 > 0.0) || !(c2 > 0.0) || !(gamma > 0.0)) {
    throw DomainError("one_exp_closed_form: need c1, c2, gamma > 0");
  }
  // h(s) = s u - (c2/2) s^(1+gamma), u = x - k1, is maximal at
  // s* = (2u / (c2 (1+gamma)))^(1/gamma), with h(s*) = s* u gamma / (1+gamma).
  OneExpClosedForm f;
  f.c1 = c1;
  f.c2 = c2;
  f.gamma = gamma;
  f.k1 = 0.5 * std::log(c1);
  f.beta_const = std::exp(f.k1);
  f.k = gamma / (1.0 + gamma) * std::pow(2.0 / (c2 * (1.0 + gamma)), 1.0 / gamma);
  return f;
}

double WeakSobolev::D(double y) const { return c_prime * std::exp(4.0 * y / n); }

double WeakSobolev::D_inv(double z) const {
  if (!(z > 0.0)) throw DomainError("weak-Sobolev D^-1: argument must be positive");
  return 0.25 * n * std::log(z / c_prime);
}

WeakSobolev weak_sobolev_D(double n, double c) {
  if (!(n > 0.0) || !(c > 0.0)) throw DomainError("weak_sobolev_D: need n, c > 0");
  WeakSobolev w;
  w.n = n;
  w.c = c;
  w.c_prime = n / (4.0 * std::exp(1.0)) * std::pow(c, -2.0 / n);
  return w;
}

double max_convexity_violation(const SampledCurve& curve) {
  const auto x = curve.abscissae();
  const auto f = curve.values();
  double worst = -kInf;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (!std::isfinite(f[i - 1]) || !std::isfinite(f[i]) || !std::isfinite(f[i + 1])) continue;
    const double chord =
        ((x[i + 1] - x[i]) * f[i - 1] + (x[i] - x[i - 1]) * f[i + 1]) / (x[i + 1] - x[i - 1]);
    worst = std::max(worst, f[i] - chord);
  }
  return worst;
}

}  // namespace ultrabound::conjugate
