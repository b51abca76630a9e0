// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

// Heat kernel at the origin for the product Brownian semigroup on the
// infinite torus with generator sum_k a_k (-d^2/dx_k^2). Each factor has
// density theta(a_k t) = sum_n exp(-n^2 a_k t) at 0 (normalized Haar measure).

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ultrabound::torus {

/// sum_{n in Z} exp(-n^2 s) by direct summation.
double theta_direct(double s);
/// The same through Poisson summation: sqrt(pi/s) sum_n exp(-pi^2 n^2 / s).
double theta_poisson(double s);
/// Direct for s >= 1, Poisson below.
double theta(double s);
/// log theta(s), accurate also when theta(s) - 1 is tiny.
double log_theta(double s);

/// a_k = k^(1/alpha).
struct Power {
  double alpha = 1.0;
};
/// a_k = (log(k+2))^((gamma+1)/gamma).
struct LogPower {
  double gamma = 1.0;
};
/// a_1, a_2, ... listed explicitly.
struct Explicit {
  std::vector<double> a;
};

class CoefficientSequence {
 public:
  using Family = std::variant<Power, LogPower, Explicit>;

  explicit CoefficientSequence(Family family);

  const Family& family() const noexcept { return family_; }
  /// a_k for k >= 1.
  double a(std::uint64_t k) const;
  /// Number of terms; 0 for the infinite families.
  std::size_t size() const noexcept;
  bool infinite() const noexcept { return size() == 0; }
  std::string describe() const;

 private:
  Family family_;
};

/// #{k >= 1 : a_k <= x}, saturating at 2^62 for the infinite families.
std::uint64_t counting(const CoefficientSequence& seq, double x);

/// log N(x) / x decreases over the first decades x = 10, 100, 1000, the
/// numerical face of log N(x) = o(x).
bool continuity_plausible(const CoefficientSequence& seq);

struct KernelOptions {
  /// Absolute bound on the neglected part of log mu_t(0).
  double tol = 1e-10;
  /// Terms summed directly before switching to an Euler-Maclaurin tail.
  std::uint64_t direct_budget = std::uint64_t{1} << 20;
};

struct KernelEvaluation {
  double t = 0.0;
  /// log mu_t(0) = sum_k log theta(a_k t).
  double log_value = 0.0;
  /// Terms summed directly.
  std::uint64_t K = 0;
  /// Bound on what the direct sum leaves out, or for the Euler-Maclaurin
  /// tail the size of its first neglected correction plus the quadrature
  /// error.
  double tail_bound = 0.0;
  bool euler_maclaurin = false;
};

/// log of the product kernel at the origin. Throws DivergenceError when the
/// tail cannot be certified.
KernelEvaluation product_kernel(const CoefficientSequence& seq, double t,
                                const KernelOptions& opts = {});

/// Sum of log theta(a_k t) over k = k_lo..k_hi.
double direct_sum(const CoefficientSequence& seq, double t, std::uint64_t k_lo,
                  std::uint64_t k_hi);

enum class FitMode {
  /// slope of log(log mu) against log(1/t): the exponent of log mu ~ k t^-alpha.
  single_log,
  /// slope of log(log log mu) against log(1/t).
  double_log,
};

struct ExponentFit {
  double estimate = 0.0;
  /// exp(intercept): the prefactor, reported without a target.
  double prefactor = 0.0;
  double residual = 0.0;
  std::size_t points_used = 0;
  /// Largest-t third dropped after the residuals showed curvature.
  bool discarded_large_t = false;
  std::vector<KernelEvaluation> kernel;
};

ExponentFit exponent_fit(const CoefficientSequence& seq, std::span<const double> t_grid,
                         FitMode mode, const KernelOptions& opts = {});

}  // namespace ultrabound::torus
