// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

// Integral transforms turning one bound into another: the weighted mean
// M_eta, the generalized H_{eta,lambda,b}, and tail-integral inversion
// (Theta -> m and B -> M).

#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ultrabound/function_spec.hpp"
#include "ultrabound/quadrature.hpp"
#include "ultrabound/sampled_curve.hpp"

namespace ultrabound::transforms {

enum class PointStatus {
  ok,
  /// Integrand blows up at 0 faster than the weight can absorb.
  divergent_at_zero,
  /// Improper tail integral did not settle.
  divergent_tail,
};

std::string_view to_string(PointStatus status);

struct PointReport {
  double x = 0.0;
  double value = 0.0;
  double error = 0.0;
  PointStatus status = PointStatus::ok;
  std::string reason;
};

struct TransformReport {
  std::string operation;
  std::string input;
  double rel_tol = 0.0;
  /// The grid does not reach the default window, so values hold only on the
  /// restricted range; nothing is extrapolated past it.
  bool localized = false;
  std::vector<PointReport> points;

  bool any_divergent() const;
  std::size_t divergent_count() const;
};

struct TransformResult {
  /// +inf at divergent points.
  SampledCurve curve;
  TransformReport report;
};

/// Default t grid: 64 log-spaced points per decade on [1e-3, 1e3].
std::vector<double> default_t_grid();

/// M_eta(t) = (eta+1) t^-(eta+1) int_0^t s^eta beta(s/(eta+1)) ds.
TransformResult m_eta(const ScalarFn& beta, double eta, std::span<const double> t_grid,
                      const quad::TailOptions& opts = {}, std::string input = "beta");

/// H(t) = (2 lambda / t^(eta+1)) int_0^t s^eta b(s/lambda) ds.
TransformResult h_transform(const ScalarFn& b, double eta, double lambda,
                            std::span<const double> t_grid, const quad::TailOptions& opts = {},
                            std::string input = "b");

struct InvertOptions {
  /// Node spacing of the cumulative tail table in the internal coordinate.
  double node_step = 0.02;
  /// Bisection stops at this bracket width.
  double bracket_width = 1e-12;
  /// B is evaluated for y up to exp(log_y_max); the rest of the tail is
  /// closed from the local decay rate of the integrand and added to the
  /// error estimate.
  double log_y_max = 700.0;
  quad::Options quad{1e-300, 1e-13, 4000};
};

/// q(s) = int_s^inf dy / B(y) with B given through log_B(y) = log B(y).
quad::Result tail_integral_log(const ScalarFn& log_B, double s, const InvertOptions& opts = {});

/// Same with B given directly.
quad::Result tail_integral(const ScalarFn& B, double s, const InvertOptions& opts = {});

/// M = q^-1 on t_grid, q(s) = int_s^inf dy/B(y), with B positive on
/// (y_lo, inf); y_lo may be -inf. Throws DivergenceError when the tail is not
/// integrable and DomainError when some t lies outside the range of q.
TransformResult ultrabound_from_B(const ScalarFn& B, double y_lo, std::span<const double> t_grid,
                                  const InvertOptions& opts = {}, std::string input = "B");

/// ultrabound_from_B with B given through log B.
TransformResult ultrabound_from_log_B(const ScalarFn& log_B, double y_lo,
                                      std::span<const double> t_grid,
                                      const InvertOptions& opts = {}, std::string input = "B");

/// m = p^-1 on t_grid, p(t) = int_t^inf dx / Theta(x), Theta positive on
/// (x_lo, inf). Runs the B inversion after x = e^y, so m = e^M. Theta is
/// only evaluated where x is representable; use coulhon_invert_log for
/// slowly growing Theta whose tail lives past that.
TransformResult coulhon_invert(const ScalarFn& theta, double x_lo, std::span<const double> t_grid,
                               const InvertOptions& opts = {}, std::string input = "Theta");

/// Same with Theta given as u -> log(Theta(e^u) / e^u). Passing the ratio
/// avoids the cancellation in log Theta(e^u) - u when Theta is close to
/// linear.
TransformResult coulhon_invert_log(const ScalarFn& log_ratio, double x_lo,
                                   std::span<const double> t_grid,
                                   const InvertOptions& opts = {}, std::string input = "Theta");

/// p(x) = int_x^inf dx' / Theta(x'), with Theta as u -> log(Theta(e^u) / e^u).
quad::Result coulhon_p_log(const ScalarFn& log_ratio, double x, const InvertOptions& opts = {});

}  // namespace ultrabound::transforms
