// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

// Legendre-type sup transforms. Each entry point documents its own
// normalization (t y / 2 versus s x); nothing is shared implicitly.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ultrabound/function_spec.hpp"
#include "ultrabound/sampled_curve.hpp"

namespace ultrabound::conjugate {

enum class Scale { log, linear };

struct ScanOptions {
  /// Search interval. For Scale::log it must be positive.
  double lo = 1e-6;
  double hi = 1e6;
  int points = 512;
  /// Golden-section stops at this bracket width (relative for log scale).
  double rel_width = 1e-10;
  /// Log scale only: when the maximizer sits on a boundary the log-extent of
  /// the domain is doubled (hi -> hi^2, lo -> lo^2) at most this many times.
  int max_doublings = 2;
  Scale scale = Scale::log;
};

/// Result of one sup over s.
struct SupPoint {
  double value = 0.0;
  double argmax = 0.0;
  bool divergent = false;
  /// Final maximizer lies on the lower / upper end of the search domain.
  bool at_lower = false;
  bool at_upper = false;
};

/// sup of g over the scan domain. Throws NotUnimodalError (mentioning
/// `label`) when the scan shows two separated local maxima.
SupPoint maximize(const ScalarFn& g, const ScanOptions& opts = {}, double label = 0.0);

/// Hypotheses (A1) boundedness on the left and (A2) superlinear growth,
/// probed on the hull of a tabulated Lambda.
struct HypothesisCheck {
  bool checked = false;
  bool bounded_left = true;
  bool superlinear = true;
  bool verified() const { return !checked || (bounded_left && superlinear); }
};

struct ConjugateResult {
  /// Transform values; +inf at divergent points.
  SampledCurve curve;
  /// Optimizer per query point.
  SampledCurve argmax;
  std::vector<double> divergent_points;
  HypothesisCheck hypotheses;
};

/// objective(s, x).
using Objective = std::function<double(double, double)>;

/// For every x in the grid: sup over the scan domain of objective(., x).
ConjugateResult sup_transform(const Objective& objective, std::span<const double> x_grid,
                              const ScanOptions& opts = {});

/// Lambda(y) = sup_{t>0} (t y / 2 - t beta(1/t)).
ConjugateResult lambda_from_beta(const ScalarFn& beta, std::span<const double> y_grid,
                                 const ScanOptions& opts = {});

/// Pointwise Lambda evaluator for the same transform; +inf where divergent.
ScalarFn lambda_evaluator(ScalarFn beta, ScanOptions opts = {});

/// N(t) = sup_{y in hull} (t y / 2 - Lambda(y)) on a tabulated Lambda. A
/// maximizer pinned to the upper hull end while still increasing marks t as
/// divergent; the (A1)/(A2) probe is recorded in `hypotheses`.
ConjugateResult n_from_lambda(const SampledCurve& lambda, std::span<const double> t_grid,
                              int scan_points = 2048);

/// beta(t) = t N(1/t), tabulated on the reciprocal abscissae of `n`.
SampledCurve beta_from_n(const SampledCurve& n);

enum class NashCase {
  /// V(x) = x, W(x) = 1.
  A,
  /// V(x) = (x/2) log x, W(x) = x.
  B,
};

/// B(x) = sup_{s>0} (s V(x) - b(s) W(x)) with b(s) = s b1(1/s). Case B is
/// evaluated as x D(log(x)/2), so x may be any positive value.
ConjugateResult b_case_transform(NashCase nash_case, const ScalarFn& b1,
                                 std::span<const double> x_grid, const ScanOptions& opts = {});

/// D(y) = sup_{s>0} (s y - s b1(1/s)), y real: the case-B transform in the
/// variable y = log sqrt(x), and the function of the generalized Gross
/// inequality.
ConjugateResult d_transform(const ScalarFn& b1, std::span<const double> y_grid,
                            const ScanOptions& opts = {});

/// Pointwise D evaluator; +inf where divergent.
ScalarFn d_evaluator(ScalarFn b1, ScanOptions opts = {});

/// Closed form of the case-B transform for a(t) = c1 exp(c2 / t^gamma):
/// b(s) = (log c1 / 2) s + (c2 / 2) s^(1+gamma),
/// D(x) = k [(x - k1)_+]^(1 + 1/gamma), beta_const = e^k1,
/// B(x) = k x [(log(sqrt(x) / beta_const))_+]^(1 + 1/gamma).
struct OneExpClosedForm {
  double c1 = 1.0;
  double c2 = 1.0;
  double gamma = 1.0;
  double k = 0.0;
  double k1 = 0.0;
  double beta_const = 1.0;

  double b(double s) const;
  double D(double x) const;
  double B(double x) const;
  double exponent() const { return 1.0 + 1.0 / gamma; }
};

OneExpClosedForm one_exp_closed_form(double c1, double c2, double gamma);

/// Weak-Sobolev function for a polynomial bound a(t) = c t^(-n/2):
/// D(y) = c' e^(4y/n) with c' = (n / 4e) c^(-2/n).
struct WeakSobolev {
  double n = 1.0;
  double c = 1.0;
  double c_prime = 1.0;

  double D(double y) const;
  double D_inv(double z) const;
};

WeakSobolev weak_sobolev_D(double n, double c);

/// Midpoint convexity on consecutive finite triples of a uniform-in-x curve:
/// returns the largest violation f(mid) - (f(lo) + f(hi)) / 2 (<= 0 when convex).
double max_convexity_violation(const SampledCurve& curve);

}  // namespace ultrabound::conjugate
