// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

// Universal bounds for solutions of Phi(s) <= (-t/2) Phi'(s) + b(t), checked
// on the equality trajectories, and the double-exponential variant.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ultrabound/function_spec.hpp"
#include "ultrabound/rk4.hpp"
#include "ultrabound/sampled_curve.hpp"

namespace ultrabound::ode_bounds {

struct OdeSolution {
  /// Phi on the part of the grid the integrator reached.
  SampledCurve curve;
  double lambda = 0.0;
  double s0 = 0.0;
  double phi0 = 0.0;
  std::string b;
  /// Step-size underflow cut the grid short on the small-s side.
  bool truncated = false;
};

/// Phi'(s) = (2 lambda / s) (b(s / lambda) - Phi(s)), Phi(s0) = phi0,
/// integrated forward and backward from s0 in sigma = log s.
OdeSolution solve_phi_equality(const ScalarFn& b, double lambda, double s0, double phi0,
                               std::span<const double> grid, const ode::Rk4Options& opts = {},
                               std::string b_desc = "b");

struct IdentityResidual {
  /// max over the grid of |H(s) + (s / 2 lambda) H'(s) - b(s / lambda)|.
  double max_residual = 0.0;
  double at = 0.0;
  std::vector<double> residuals;
};

/// Residual of the equality satisfied by H_{eta,b} (lambda = (eta+1)/2), with
/// H' from a 5-point central stencil of width s * step_ratio.
IdentityResidual verify_h_identity(const ScalarFn& b, double eta, std::span<const double> grid,
                                   double step_ratio = 1e-3);

struct EnsembleMember {
  double s0 = 0.0;
  double phi0 = 0.0;
};

struct Ensemble {
  std::vector<EnsembleMember> members;
  /// Draws whose trajectory carries a positive s^(-2 lambda) component, i.e.
  /// phi0 > H_{2 lambda - 1, lambda, b}(s0). Such a Phi violates the
  /// vanishing boundary term at 0 that the bound relies on.
  std::vector<EnsembleMember> rejected;
};

/// `count` admissible members with s0 uniform on [s0_lo, s0_hi] and phi0
/// uniform on [0, 2 b(s0 / lambda)]. Member i uses its own stream seeded from
/// (seed, i).
Ensemble draw_ensemble(const ScalarFn& b, double lambda, std::size_t count, double s0_lo,
                       double s0_hi, std::uint64_t seed, std::size_t max_draws = 100000);

/// True when phi0 <= H_{2 lambda - 1, lambda, b}(s0).
bool admissible(const ScalarFn& b, double lambda, const EnsembleMember& m);

struct Violation {
  EnsembleMember member;
  double t = 0.0;
  double phi = 0.0;
  double bound = 0.0;
};

struct BoundReport {
  double eta = 0.0;
  double lambda = 0.0;
  /// lambda > (eta+1)/2: only nonnegative trajectories are checked.
  bool nonnegative_only = false;
  std::size_t checked = 0;
  std::size_t skipped_negative = 0;
  std::size_t truncated = 0;
  /// max over members and grid of Phi(t) / H(t); close to 1 means the bound
  /// is attained.
  double max_ratio = 0.0;
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

/// Checks Phi(t) <= H_{eta,lambda,b}(t) (1 + rel_tol) on the grid for every
/// member's equality trajectory.
BoundReport universal_bound_check(const ScalarFn& b, double eta, double lambda,
                                  std::span<const EnsembleMember> ensemble,
                                  std::span<const double> grid, double rel_tol = 1e-6);

/// Constants of the double-exponential bound Phi(t) <= k1 exp(k2 / t^alpha)
/// for b(t) = c1 exp(c2 / t^gamma), 0 < gamma < 1.
struct DoubleExpBound {
  double c1 = 1.0;
  double c2 = 1.0;
  double gamma = 0.5;
  double k1 = 0.0;
  double k2 = 0.0;
  double alpha = 0.0;
  /// Change of variable t = s^(alpha+1) / lambda with lambda = (alpha c2)^(1/(1-gamma)).
  double lambda = 0.0;

  double operator()(double t) const;
  double log_value(double t) const;
};

DoubleExpBound double_exp_bound(double c1, double c2, double gamma);

/// Phi'(s) = (2 lambda / s^(alpha+1)) (c1 exp(k2 / s^alpha) - Phi(s)),
/// Phi(s0) = phi0: the equality case after t = s^(alpha+1) / lambda.
OdeSolution solve_double_exp_equality(const DoubleExpBound& bound, double s0, double phi0,
                                      std::span<const double> grid,
                                      const ode::Rk4Options& opts = {});

struct DoubleExpReport {
  DoubleExpBound bound;
  std::size_t checked = 0;
  std::size_t rejected = 0;
  double max_ratio = 0.0;
  std::vector<Violation> violations;
  /// Slope of log log(Phi / k1) against log(1/t) on the trajectory through
  /// the bound itself.
  double fitted_alpha = 0.0;
  double fit_residual = 0.0;
  bool passed() const { return violations.empty(); }
};

/// Draws `count` admissible trajectories (s0 uniform on the grid hull, phi0
/// uniform on [0, 2 b(s0)] in the changed variable) plus the extremal one
/// through phi0 = k1 exp(k2 / s0^alpha), and checks them against the bound.
DoubleExpReport double_exp_check(const DoubleExpBound& bound, std::span<const double> grid,
                                 std::size_t count, std::uint64_t seed, double rel_tol = 1e-9);

}  // namespace ultrabound::ode_bounds
