// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ultrabound/conjugate.hpp"
#include "ultrabound/error.hpp"
#include "ultrabound/sampled_curve.hpp"
#include "ultrabound/simd/kernels.hpp"
#include "ultrabound/speclab.hpp"

namespace ultrabound::speclab {
namespace {

constexpr double kPreTol = 1e-12;

void finish(MarginSweep& s) {
  s.worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.margin.size(); ++i) {
    if (s.margin[i] < s.worst) {
      s.worst = s.margin[i];
      s.worst_at = s.t[i];
    }
  }
}

// g shifted by one lattice step along `axis` (periodically).
std::vector<double> shifted(const GridValues& g, int axis) {
  const std::size_t n = static_cast<std::size_t>(g.n);
  std::size_t inner = 1;
  for (int a = axis + 1; a < g.dim; ++a) inner *= n;
  const std::size_t outer = g.values.size() / (n * inner);
  std::vector<double> out(g.values.size());
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < n; ++i) {
      const double* src = &g.values[(o * n + (i + 1) % n) * inner];
      std::copy(src, src + inner, &out[(o * n + i) * inner]);
    }
  }
  return out;
}

}  // namespace

double check_jensen(const TrigPoly& f) {
  const Norms nm = norms(f);
  if (nm.l1 > 1.0 + kPreTol) throw DomainError("check_jensen: needs ||f||_1 <= 1");
  const double rhs = entropy(f).value;
  const double lhs = nm.l2 > 0.0 ? nm.l2 * nm.l2 * std::log(nm.l2) : 0.0;
  return rhs - lhs;
}

MarginSweep check_super_poincare(const TrigPoly& f, const ScalarFn& a,
                                 std::span<const double> t_grid) {
  const Norms nm = norms(f);
  const double q = dirichlet(f);
  MarginSweep s;
  for (double t : t_grid) {
    s.t.push_back(t);
    s.margin.push_back(t * q + a(t) * nm.l1 * nm.l1 - nm.l2 * nm.l2);
  }
  finish(s);
  return s;
}

MarginSweep check_lsiwp(const TrigPoly& f, const ScalarFn& beta, std::span<const double> t_grid) {
  const double l2 = norms(f).l2;
  const double q = dirichlet(f);
  // int f^2 log f - ||f||_2^2 log ||f||_2 is the entropy.
  const double ent = entropy(f).value;
  MarginSweep s;
  for (double t : t_grid) {
    s.t.push_back(t);
    s.margin.push_back(t * q + beta(t) * l2 * l2 - ent);
  }
  finish(s);
  return s;
}

PointCheck check_nash(const TrigPoly& f, const ScalarFn& theta_eval) {
  const Norms nm = norms(f);
  if (nm.l1 > 1.0 + kPreTol) throw DomainError("check_nash: needs ||f||_1 <= 1");
  PointCheck out;
  out.at = nm.l2 * nm.l2;
  const double theta = theta_eval(out.at);
  if (!std::isfinite(theta)) {
    out.skipped = true;
    out.reason = "Nash function divergent at x=" + std::to_string(out.at);
    return out;
  }
  out.margin = dirichlet(f) - theta;
  return out;
}

ScalarFn nash_function(std::vector<double> weights) {
  // lambda_evaluator computes sup_t (t y / 2 - t beta(1/t)); with beta = log a
  // and y = 2 s this is sup_t (s t - t log a(1/t)).
  ScalarFn log_a = [w = std::move(weights)](double t) { return log_kernel_at_origin(w, t); };
  ScalarFn lambda = conjugate::lambda_evaluator(std::move(log_a));
  return [lambda = std::move(lambda)](double x) { return x * lambda(2.0 * std::log(x)); };
}

PointCheck check_betnash(const TrigPoly& f, const ScalarFn& d_eval, double y_min) {
  const double l2 = norms(f).l2;
  if (std::abs(l2 - 1.0) > 1e-10) throw DomainError("check_betnash: needs ||f||_2 = 1");
  PointCheck out;
  out.at = entropy(f).value;
  if (out.at < y_min) {
    out.skipped = true;
    out.reason = "entropy below the validity window of D";
    return out;
  }
  const double d = d_eval(out.at);
  if (!std::isfinite(d)) {
    out.skipped = true;
    out.reason = "D divergent at y=" + std::to_string(out.at);
    return out;
  }
  out.margin = dirichlet(f) - d;
  return out;
}

PolynomialSurrogate polynomial_surrogate(std::span<const double> weights, double t_max) {
  if (!(t_max > 0.0)) throw DomainError("polynomial_surrogate: t_max must be positive");
  PolynomialSurrogate s;
  s.dim = static_cast<double>(weights.size());
  s.t_max = t_max;
  // a(t) t^(d/2) on a fine scan of (0, t_max]; a small factor covers the
  // gaps between scan points.
  double c = 0.0;
  for (double t : log_grid(t_max * 1e-8, t_max, 4001)) {
    c = std::max(c, std::exp(log_kernel_at_origin(weights, t) + 0.5 * s.dim * std::log(t)));
  }
  s.c = c * (1.0 + 1e-6);
  const conjugate::WeakSobolev ws = conjugate::weak_sobolev_D(s.dim, s.c);
  s.D = [ws](double y) { return ws.D(y); };
  // The maximizer of s y - b(s) satisfies D(y) = (d/4) s*; s* >= 1/t_max.
  s.y_min = ws.D_inv(s.dim / (4.0 * t_max));
  return s;
}

double lattice_dirichlet(const GridValues& g, std::span<const double> weights) {
  if (weights.size() != static_cast<std::size_t>(g.dim)) {
    throw DomainError("lattice_dirichlet: one weight per axis expected");
  }
  const double h = 2.0 * std::numbers::pi / g.n;
  double w = 0.0;
  for (int axis = 0; axis < g.dim; ++axis) {
    const std::vector<double> s = shifted(g, axis);
    w += weights[axis] * simd::sum_squared_diff(g.values, s);
  }
  return w / (h * h * static_cast<double>(g.values.size()));
}

Truncations dyadic_truncations(const GridValues& f) {
  Truncations out;
  if (f.values.empty()) return out;
  const double lo = simd::reduce_min(f.values);
  const double hi = simd::reduce_max(f.values);
  if (lo < -1e-12) throw DomainError("dyadic_truncations: f is negative on the grid");
  if (!(hi > 0.0)) return out;
  // f_k == 2^k everywhere once 2^(k+1) <= min f; f_k == 0 once 2^k >= max f.
  out.k_lo = lo > 0.0 ? static_cast<int>(std::floor(std::log2(lo))) - 1 : -1074;
  out.k_lo = std::max(out.k_lo, static_cast<int>(std::floor(std::log2(hi))) - 80);
  out.k_hi = static_cast<int>(std::ceil(std::log2(hi)));
  for (int k = out.k_lo; k <= out.k_hi; ++k) {
    const double level = std::ldexp(1.0, k);
    GridValues piece{f.dim, f.n, std::vector<double>(f.values.size()), 0.0};
    simd::clamp_band(f.values, level, level, piece.values);
    out.pieces.push_back(std::move(piece));
  }
  return out;
}

TruncationCheck truncation_sum_check(const TrigPoly& f) {
  const GridValues g = f.on_grid(2 * base_grid(f));
  TruncationCheck out;
  out.w_f = lattice_dirichlet(g, f.weights());
  const Truncations tr = dyadic_truncations(g);
  for (const GridValues& p : tr.pieces) out.w_sum += lattice_dirichlet(p, f.weights());
  out.pieces = static_cast<int>(tr.pieces.size());
  if (out.w_f > 0.0) {
    out.margin = 1.0 - out.w_sum / out.w_f;
  } else {
    out.margin = out.w_sum > 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
  }
  return out;
}

}  // namespace ultrabound::speclab
