// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <sstream>
#include <string>

#include "ultrabound/error.hpp"
#include "ultrabound/fit.hpp"
#include "ultrabound/quadrature.hpp"
#include "ultrabound/simd/kernels.hpp"
#include "ultrabound/torus.hpp"

namespace ultrabound::torus {
namespace {

constexpr std::uint64_t kSaturated = std::uint64_t{1} << 62;
constexpr std::size_t kChunk = 4096;

double log_power_delta(const LogPower& p) { return (p.gamma + 1.0) / p.gamma; }

// a(x) extended to real x >= 1.
double a_continuous(const CoefficientSequence& seq, double x) {
  if (const auto* p = std::get_if<Power>(&seq.family())) return std::pow(x, 1.0 / p->alpha);
  const auto& lp = std::get<LogPower>(seq.family());
  return std::pow(std::log(x + 2.0), log_power_delta(lp));
}

// int_K^inf exp(-t a(x)) dx; +inf when it cannot be evaluated.
double exp_integral(const CoefficientSequence& seq, double t, std::uint64_t K) {
  if (const auto* p = std::get_if<Power>(&seq.family())) {
    const double z = t * std::pow(static_cast<double>(K), 1.0 / p->alpha);
    const double g = boost::math::tgamma(p->alpha, z);
    return p->alpha * std::pow(t, -p->alpha) * g;
  }
  const double delta = log_power_delta(std::get<LogPower>(seq.family()));
  // x + 2 = e^u.
  const double u0 = std::log(static_cast<double>(K) + 2.0);
  const quad::Result r = quad::integrate_to_infinity(
      [&](double v) {
        const double u = u0 + v;
        return std::exp(u - t * std::pow(u, delta));
      },
      0.0);
  if (!r.finite || !r.converged) return std::numeric_limits<double>::infinity();
  return r.value + r.error;
}

// Bound on sum_{k>K} log theta(a_k t) from log theta(s) <= theta(s) - 1 <=
// 2 e^-s / (1 - e^-s) and an integral comparison for the decreasing terms.
double geometric_tail(const CoefficientSequence& seq, double t, std::uint64_t K) {
  const double s1 = t * seq.a(K + 1);
  const double factor = 2.0 / -std::expm1(-s1);
  return factor * exp_integral(seq, t, K);
}

struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

CoefficientSequence::CoefficientSequence(Family family) : family_(std::move(family)) {
  if (const auto* p = std::get_if<Power>(&family_)) {
    if (!(p->alpha > 0.0)) throw DomainError("power sequence: alpha must be positive");
  } else if (const auto* q = std::get_if<LogPower>(&family_)) {
    if (!(q->gamma > 0.0)) throw DomainError("log-power sequence: gamma must be positive");
  } else {
    const auto& a = std::get<Explicit>(family_).a;
    if (a.empty()) throw DomainError("explicit sequence: no coefficients");
    for (double v : a) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError("explicit sequence: coefficients must be positive and finite");
      }
    }
  }
}

double CoefficientSequence::a(std::uint64_t k) const {
  if (k == 0) throw DomainError("coefficient index starts at 1");
  if (const auto* p = std::get_if<Power>(&family_)) {
    return std::pow(static_cast<double>(k), 1.0 / p->alpha);
  }
  if (const auto* q = std::get_if<LogPower>(&family_)) {
    return std::pow(std::log(static_cast<double>(k) + 2.0), log_power_delta(*q));
  }
  const auto& a = std::get<Explicit>(family_).a;
  if (k > a.size()) throw DomainError("coefficient index past the explicit list");
  return a[k - 1];
}

std::size_t CoefficientSequence::size() const noexcept {
  if (const auto* e = std::get_if<Explicit>(&family_)) return e->a.size();
  return 0;
}

std::string CoefficientSequence::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* p = std::get_if<Power>(&family_)) {
    os << "power(alpha=" << p->alpha << ")";
  } else if (const auto* q = std::get_if<LogPower>(&family_)) {
    os << "logpower(gamma=" << q->gamma << ")";
  } else {
    os << "explicit(n=" << size() << ")";
  }
  return os.str();
}

std::uint64_t counting(const CoefficientSequence& seq, double x) {
  if (!(x > 0.0)) throw DomainError("counting: x must be positive");
  if (const auto* e = std::get_if<Explicit>(&seq.family())) {
    return static_cast<std::uint64_t>(
        std::count_if(e->a.begin(), e->a.end(), [x](double v) { return v <= x; }));
  }
  double guess = 0.0;
  if (const auto* p = std::get_if<Power>(&seq.family())) {
    guess = std::floor(std::pow(x, p->alpha));
  } else {
    const double e = std::pow(x, 1.0 / log_power_delta(std::get<LogPower>(seq.family())));
    if (e > std::log(static_cast<double>(kSaturated))) return kSaturated;
    guess = std::max(0.0, std::floor(std::exp(e)) - 2.0);
  }
  if (guess >= static_cast<double>(kSaturated)) return kSaturated;
  auto n = static_cast<std::uint64_t>(guess);
  // The closed forms can be off by one in floating point.
  while (n + 1 < kSaturated && seq.a(n + 1) <= x) ++n;
  while (n > 0 && seq.a(n) > x) --n;
  return n;
}

bool continuity_plausible(const CoefficientSequence& seq) {
  double prev = std::numeric_limits<double>::infinity();
  for (double x : {10.0, 100.0, 1000.0}) {
    const auto n = counting(seq, x);
    const double r = std::log(static_cast<double>(std::max<std::uint64_t>(n, 1))) / x;
    if (r > prev) return false;
    prev = r;
  }
  return true;
}

double direct_sum(const CoefficientSequence& seq, double t, std::uint64_t k_lo,
                  std::uint64_t k_hi) {
  Accumulator acc;
  double buf[kChunk];
  for (std::uint64_t k = k_lo; k <= k_hi;) {
    const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, k_hi - k + 1));
    for (std::size_t i = 0; i < n; ++i) buf[i] = log_theta(seq.a(k + i) * t);
    acc.add(simd::reduce_sum(std::span<const double>(buf, n)));
    k += n;
  }
  return acc.value();
}

KernelEvaluation product_kernel(const CoefficientSequence& seq, double t,
                                const KernelOptions& opts) {
  if (!(t > 0.0)) throw DomainError("product_kernel: t must be positive");
  if (!(opts.tol > 0.0)) throw DomainError("product_kernel: tol must be positive");
  KernelEvaluation ev;
  ev.t = t;
  if (!seq.infinite()) {
    ev.K = seq.size();
    ev.log_value = direct_sum(seq, t, 1, ev.K);
    return ev;
  }
  if (!continuity_plausible(seq)) {
    throw DivergenceError("product_kernel: log N(x) = o(x) fails on the first decades");
  }

  // Double K until the geometric tail certificate drops below tol.
  Accumulator acc;
  std::uint64_t K = 16;
  acc.add(direct_sum(seq, t, 1, K));
  while (K < opts.direct_budget) {
    const double tail = geometric_tail(seq, t, K);
    if (tail < opts.tol * std::max(1.0, acc.value())) {
      ev.K = K;
      ev.log_value = acc.value();
      ev.tail_bound = tail;
      return ev;
    }
    const std::uint64_t next = std::min(2 * K, opts.direct_budget);
    acc.add(direct_sum(seq, t, K + 1, next));
    K = next;
  }
  {
    const double tail = geometric_tail(seq, t, K);
    if (tail < opts.tol * std::max(1.0, acc.value())) {
      ev.K = K;
      ev.log_value = acc.value();
      ev.tail_bound = tail;
      return ev;
    }
  }

  // Euler-Maclaurin on the remaining terms k >= K + 1 =: k0:
  // sum_{k>=k0} f(k) = int_{k0}^inf f + f(k0)/2 - f'(k0)/12 + f'''(k0)/720 - ...
  const double k0 = static_cast<double>(K + 1);
  auto f = [&](double x) { return log_theta(t * a_continuous(seq, x)); };
  quad::TailOptions qopts;
  qopts.panel.rel_tol = 1e-14;
  qopts.panel.abs_tol = 1e-300;
  const double u0 = std::log(k0);
  const quad::Result integral = quad::integrate_to_infinity(
      [&](double v) {
        const double x = std::exp(u0 + v);
        return x * f(x);
      },
      0.0, qopts);
  if (!integral.finite || !integral.converged) {
    throw DivergenceError("product_kernel: tail integral does not converge at t=" +
                          std::to_string(t));
  }
  const double h = k0 / 8.0;
  const double fp = (f(k0 - 2 * h) - 8 * f(k0 - h) + 8 * f(k0 + h) - f(k0 + 2 * h)) / (12 * h);
  const double fppp =
      (f(k0 + 2 * h) - 2 * f(k0 + h) + 2 * f(k0 - h) - f(k0 - 2 * h)) / (2 * h * h * h);
  const double tail = integral.value + 0.5 * f(k0) - fp / 12.0;
  acc.add(tail);
  ev.K = K;
  ev.log_value = acc.value();
  ev.euler_maclaurin = true;
  ev.tail_bound = std::abs(fppp) / 720.0 + integral.error;
  if (!(ev.tail_bound < opts.tol * std::max(1.0, ev.log_value))) {
    throw DivergenceError("product_kernel: tail not certified within the term budget at t=" +
                          std::to_string(t));
  }
  return ev;
}

ExponentFit exponent_fit(const CoefficientSequence& seq, std::span<const double> t_grid,
                         FitMode mode, const KernelOptions& opts) {
  if (t_grid.size() < 3) throw DomainError("exponent_fit: need at least 3 grid points");
  ExponentFit out;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
      throw DomainError("exponent_fit: t grid must be strictly increasing");
    }
    out.kernel.push_back(product_kernel(seq, t_grid[i], opts));
  }
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < out.kernel.size(); ++i) {
    const double lm = out.kernel[i].log_value;
    if (i > 0 && lm > out.kernel[i - 1].log_value * (1.0 + 1e-12)) {
      throw DomainError("exponent_fit: log kernel is not nonincreasing in t");
    }
    double v = 0.0;
    if (mode == FitMode::single_log) {
      if (!(lm > 0.0)) throw DomainError("exponent_fit: log kernel must be positive");
      v = std::log(lm);
    } else {
      if (!(lm > std::exp(1.0))) {
        throw DomainError("exponent_fit: log kernel must exceed e for double logs");
      }
      v = std::log(std::log(lm));
    }
    x.push_back(-std::log(t_grid[i]));
    y.push_back(v);
  }
  LineFit f = fit_line(x, y);
  std::size_t used = x.size();
  if (x.size() >= 6 && f.sign_change_rate < 1.0 / 3.0) {
    // Residuals bend: drop the largest-t third, at the back of the grid.
    const std::size_t keep = x.size() - x.size() / 3;
    f = fit_line(std::span<const double>(x).first(keep), std::span<const double>(y).first(keep));
    used = keep;
    out.discarded_large_t = true;
  }
  out.estimate = f.slope;
  out.prefactor = std::exp(f.intercept);
  out.residual = f.rms;
  out.points_used = used;
  return out;
}

}  // namespace ultrabound::torus
