// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

// Trigonometric polynomials on the d-torus [0, 2pi)^d with normalized Haar
// measure, the weighted Laplacian A = -sum_j a_j d^2/dx_j^2, and numerical
// checks of the functional inequalities on concrete functions.

#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ultrabound/function_spec.hpp"

namespace ultrabound::speclab {

inline constexpr int kMaxDim = 3;
/// Largest degree per axis a TrigPoly may carry. make_nonneg squares its
/// random factor, so the factor itself is capped at half of this.
inline constexpr int kMaxDegree = 32;

/// Values of a real function on the uniform tensor grid with n points per
/// axis, axis 0 slowest.
struct GridValues {
  int dim = 1;
  int n = 0;
  std::vector<double> values;
  /// Largest imaginary part left over by the synthesis.
  double max_imag = 0.0;
};

class TrigPoly {
 public:
  using Coeff = std::complex<double>;

  /// Coefficients for frequencies n in [-degree, degree]^dim, row-major with
  /// axis 0 slowest (index of n_j is n_j + degree). Hermitian symmetry
  /// f^(-n) = conj(f^(n)) is checked and then enforced exactly.
  TrigPoly(int dim, int degree, std::vector<Coeff> coeffs, std::vector<double> weights);

  static TrigPoly constant(int dim, double value, std::vector<double> weights);

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::span<const Coeff> coeffs() const noexcept { return coeffs_; }

  /// Number of frequencies per axis, 2 degree + 1.
  int side() const noexcept { return 2 * degree_ + 1; }
  Coeff coeff(std::span<const int> freq) const;
  /// Eigenvalue sum_j a_j n_j^2 of the flat index.
  double eigenvalue(std::size_t flat) const;

  GridValues on_grid(int n) const;
  /// Point evaluation (slow; for tests).
  double operator()(std::span<const double> x) const;

  TrigPoly scaled(double c) const;

 private:
  int dim_;
  int degree_;
  std::vector<Coeff> coeffs_;
  std::vector<double> weights_;
};

/// Smallest grid on which the trapezoid rule integrates f^2 exactly.
int base_grid(const TrigPoly& f);

struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
  double sup = 0.0;
};

/// l2 by Parseval; l1 and sup on a grid four times the base grid.
Norms norms(const TrigPoly& f);

/// l2 norm squared on the base grid, the quadrature side of Parseval.
double l2_squared_on_grid(const TrigPoly& f);

struct Entropy {
  /// int f^2 log(f / ||f||_2) dmu on the fine grid.
  double value = 0.0;
  /// |fine - coarse| between the 4x and 2x grids.
  double error = 0.0;
};

/// Throws DomainError when f dips below -1e-12 on the grid.
Entropy entropy(const TrigPoly& f);

/// Q(f) = sum_n (sum_j a_j n_j^2) |f^(n)|^2.
double dirichlet(const TrigPoly& f);

/// T_t f = e^{-tA} f.
TrigPoly semigroup_apply(const TrigPoly& f, double t);

/// Product, computed exactly through a grid fine enough for the sum degree.
TrigPoly multiply(const TrigPoly& f, const TrigPoly& g);

inline constexpr double kNonnegFloor = 1e-8;

/// p^2 + 1e-8 with p a random real trigonometric polynomial of the given
/// degree (standard normal coefficients, Hermitian-symmetrized).
TrigPoly make_nonneg(std::uint64_t seed, int dim, int degree, std::vector<double> weights);

/// Seed of the i-th sample of a sweep seeded with `seed`.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

/// f / ||f||_1 (f >= 0 assumed, so ||f||_1 = f^(0)).
TrigPoly normalize_l1(const TrigPoly& f);
/// f / ||f||_2.
TrigPoly normalize_l2(const TrigPoly& f);

/// Kernel of e^{-tA} at the origin, prod_j theta(a_j t), through the torus
/// product kernel on the explicit weight list.
double kernel_at_origin(std::span<const double> weights, double t);
/// log of the same.
double log_kernel_at_origin(std::span<const double> weights, double t);

/// Margin RHS - LHS of ||f||_2^2 log ||f||_2 <= int f^2 log(f / ||f||_2).
/// Needs f >= 0 and ||f||_1 <= 1.
double check_jensen(const TrigPoly& f);

struct MarginSweep {
  std::vector<double> t;
  std::vector<double> margin;
  double worst = 0.0;
  double worst_at = 0.0;
};

/// Margins of ||f||_2^2 <= t Q(f) + a(t) ||f||_1^2 on the t grid.
MarginSweep check_super_poincare(const TrigPoly& f, const ScalarFn& a,
                                 std::span<const double> t_grid);

/// Margins of int f^2 log f <= t Q(f) + beta(t) ||f||_2^2 + ||f||_2^2 log ||f||_2.
MarginSweep check_lsiwp(const TrigPoly& f, const ScalarFn& beta, std::span<const double> t_grid);

struct PointCheck {
  double margin = 0.0;
  /// Argument handed to the evaluator.
  double at = 0.0;
  /// The evaluator was divergent (or outside its validity window) there.
  bool skipped = false;
  std::string reason;
};

/// Margin Q(f) - Theta(||f||_2^2) of the Nash inequality; needs
/// ||f||_1 <= 1. theta_eval(x) = x Lambda(log x).
PointCheck check_nash(const TrigPoly& f, const ScalarFn& theta_eval);

/// x Lambda(log x) with Lambda(s) = sup_{t>0} (s t - t log a(1/t)), a the
/// kernel at the origin for the given weights; computed by the conjugate
/// module.
ScalarFn nash_function(std::vector<double> weights);

/// Margin Q(f) - D(int f^2 log f); needs f >= 0 and ||f||_2 = 1. Arguments
/// below y_min are outside the evaluator's validity window and skipped.
PointCheck check_betnash(const TrigPoly& f, const ScalarFn& d_eval,
                         double y_min = -std::numeric_limits<double>::infinity());

/// Polynomial surrogate a(t) <= c t^(-d/2) of the kernel, valid for
/// t <= t_max, and the window it induces on D.
struct PolynomialSurrogate {
  double dim = 0.0;
  double c = 0.0;
  double t_max = 0.0;
  /// D(y) = c' e^(4y/d).
  ScalarFn D;
  /// Smallest y whose maximizer s* = 1/t stays inside the window.
  double y_min = 0.0;
};

PolynomialSurrogate polynomial_surrogate(std::span<const double> weights, double t_max);

/// Discrete Dirichlet form on the sampling lattice:
/// sum_j a_j mean_x ((g(x + h e_j) - g(x)) / h)^2, h = 2 pi / n.
double lattice_dirichlet(const GridValues& g, std::span<const double> weights);

/// f_k = min((f - 2^k)_+, 2^k) pointwise, for every k from the largest one
/// that is constant on the grid up to the first one that vanishes.
struct Truncations {
  int k_lo = 0;
  int k_hi = -1;
  std::vector<GridValues> pieces;
};

Truncations dyadic_truncations(const GridValues& f);

struct TruncationCheck {
  double w_f = 0.0;
  double w_sum = 0.0;
  /// 1 - w_sum / w_f (0 when both vanish).
  double margin = 0.0;
  int pieces = 0;
};

/// sum_k W(f_k) <= W(f) on a grid twice the base grid.
TruncationCheck truncation_sum_check(const TrigPoly& f);

}  // namespace ultrabound::speclab
