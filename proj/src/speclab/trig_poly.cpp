// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ultrabound/error.hpp"
#include "ultrabound/simd/kernels.hpp"
#include "ultrabound/speclab.hpp"
#include "ultrabound/torus.hpp"

namespace ultrabound::speclab {
namespace {

using Coeff = TrigPoly::Coeff;

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// exp(sign * i * k * 2 pi x / n) with the angle reduced mod n first.
Coeff unit(long k, long x, long n, int sign) {
  const long r = ((k * x) % n + n) % n;
  const double a = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
  return {std::cos(a), sign * std::sin(a)};
}

// Contracts one axis of an array of shape (outer, m, inner) with the n x m
// matrix e, giving shape (outer, n, inner).
std::vector<Coeff> apply_axis(const std::vector<Coeff>& in, std::size_t outer, std::size_t m,
                              std::size_t inner, const std::vector<Coeff>& e, std::size_t n) {
  std::vector<Coeff> out(outer * n * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t x = 0; x < n; ++x) {
      Coeff* dst = &out[(o * n + x) * inner];
      for (std::size_t k = 0; k < m; ++k) {
        const Coeff w = e[x * m + k];
        const Coeff* src = &in[(o * m + k) * inner];
        for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
      }
    }
  }
  return out;
}

// Separable transform of a dim-dimensional array with side m on every axis
// into side n, one axis at a time.
std::vector<Coeff> separable(std::vector<Coeff> data, int dim, std::size_t m,
                             const std::vector<Coeff>& e, std::size_t n) {
  for (int axis = 0; axis < dim; ++axis) {
    const std::size_t outer = ipow(n, axis);
    const std::size_t inner = ipow(m, dim - axis - 1);
    data = apply_axis(data, outer, m, inner, e, n);
  }
  return data;
}

// Synthesis matrix: grid point x, frequency index k (frequency k - degree).
std::vector<Coeff> synthesis(int degree, int n) {
  const int side = 2 * degree + 1;
  std::vector<Coeff> e(static_cast<std::size_t>(n) * side);
  for (int x = 0; x < n; ++x) {
    for (int k = 0; k < side; ++k) e[x * side + k] = unit(k - degree, x, n, +1);
  }
  return e;
}

// Analysis matrix: frequency index k, grid point x, including the 1/n.
std::vector<Coeff> analysis(int degree, int n) {
  const int side = 2 * degree + 1;
  std::vector<Coeff> e(static_cast<std::size_t>(side) * n);
  for (int k = 0; k < side; ++k) {
    for (int x = 0; x < n; ++x) e[k * n + x] = unit(k - degree, x, n, -1) / static_cast<double>(n);
  }
  return e;
}

double grid_mean(std::span<const double> v) {
  return simd::reduce_sum(v) / static_cast<double>(v.size());
}

double entropy_on(const TrigPoly& f, int n, double l2) {
  const GridValues g = f.on_grid(n);
  std::vector<double> w(g.values.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double v = g.values[i];
    if (v < -1e-12) throw DomainError("entropy: f is negative on the quadrature grid");
    w[i] = v > 0.0 ? v * v * std::log(v / l2) : 0.0;
  }
  return grid_mean(w);
}

}  // namespace

TrigPoly::TrigPoly(int dim, int degree, std::vector<Coeff> coeffs, std::vector<double> weights)
    : dim_(dim), degree_(degree), coeffs_(std::move(coeffs)), weights_(std::move(weights)) {
  if (dim_ < 1 || dim_ > kMaxDim) throw DomainError("TrigPoly: dimension must be 1..3");
  if (degree_ < 0 || degree_ > kMaxDegree) throw DomainError("TrigPoly: degree must be 0..32");
  if (weights_.size() != static_cast<std::size_t>(dim_)) {
    throw DomainError("TrigPoly: one weight per axis expected");
  }
  for (double a : weights_) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("TrigPoly: weights must be positive");
  }
  const std::size_t total = ipow(side(), dim_);
  if (coeffs_.size() != total) throw DomainError("TrigPoly: coefficient count mismatch");
  double scale = 1.0;
  for (const Coeff& c : coeffs_) scale = std::max(scale, std::abs(c));
  // Frequency -n sits at the mirrored flat index.
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t j = total - 1 - i;
    if (j < i) break;
    if (std::abs(coeffs_[j] - std::conj(coeffs_[i])) > 1e-12 * scale) {
      throw DomainError("TrigPoly: coefficients are not Hermitian symmetric");
    }
    const Coeff avg = 0.5 * (coeffs_[i] + std::conj(coeffs_[j]));
    coeffs_[i] = avg;
    coeffs_[j] = std::conj(avg);
  }
}

TrigPoly TrigPoly::constant(int dim, double value, std::vector<double> weights) {
  std::vector<Coeff> c(1, Coeff(value, 0.0));
  return TrigPoly(dim, 0, std::move(c), std::move(weights));
}

Coeff TrigPoly::coeff(std::span<const int> freq) const {
  if (freq.size() != static_cast<std::size_t>(dim_)) throw DomainError("coeff: wrong dimension");
  std::size_t flat = 0;
  for (int n : freq) {
    if (std::abs(n) > degree_) return {};
    flat = flat * side() + static_cast<std::size_t>(n + degree_);
  }
  return coeffs_[flat];
}

double TrigPoly::eigenvalue(std::size_t flat) const {
  double lambda = 0.0;
  for (int axis = dim_ - 1; axis >= 0; --axis) {
    const int n = static_cast<int>(flat % side()) - degree_;
    flat /= side();
    lambda += weights_[axis] * n * n;
  }
  return lambda;
}

GridValues TrigPoly::on_grid(int n) const {
  if (n < 1) throw DomainError("on_grid: need at least one point per axis");
  std::vector<Coeff> v = separable(coeffs_, dim_, side(), synthesis(degree_, n), n);
  GridValues g;
  g.dim = dim_;
  g.n = n;
  g.values.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    g.values[i] = v[i].real();
    g.max_imag = std::max(g.max_imag, std::abs(v[i].imag()));
  }
  return g;
}

double TrigPoly::operator()(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) throw DomainError("TrigPoly: wrong dimension");
  Coeff sum = 0.0;
  for (std::size_t flat = 0; flat < coeffs_.size(); ++flat) {
    double phase = 0.0;
    std::size_t rest = flat;
    for (int axis = dim_ - 1; axis >= 0; --axis) {
      const int n = static_cast<int>(rest % side()) - degree_;
      rest /= side();
      phase += n * x[axis];
    }
    sum += coeffs_[flat] * Coeff(std::cos(phase), std::sin(phase));
  }
  return sum.real();
}

TrigPoly TrigPoly::scaled(double c) const {
  std::vector<Coeff> out(coeffs_);
  for (Coeff& v : out) v *= c;
  return TrigPoly(dim_, degree_, std::move(out), weights_);
}

int base_grid(const TrigPoly& f) { return 2 * f.degree() + 1; }

Norms norms(const TrigPoly& f) {
  Norms out;
  double s = 0.0;
  for (const Coeff& c : f.coeffs()) s += std::norm(c);
  out.l2 = std::sqrt(s);
  const GridValues g = f.on_grid(4 * base_grid(f));
  out.l1 = simd::sum_abs(g.values) / static_cast<double>(g.values.size());
  out.sup = std::max(simd::reduce_max(g.values), -simd::reduce_min(g.values));
  return out;
}

double l2_squared_on_grid(const TrigPoly& f) {
  const GridValues g = f.on_grid(base_grid(f));
  return simd::sum_squares(g.values) / static_cast<double>(g.values.size());
}

Entropy entropy(const TrigPoly& f) {
  const double l2 = norms(f).l2;
  if (!(l2 > 0.0)) return {};
  const int base = base_grid(f);
  const double coarse = entropy_on(f, 2 * base, l2);
  const double fine = entropy_on(f, 4 * base, l2);
  return {fine, std::abs(fine - coarse)};
}

double dirichlet(const TrigPoly& f) {
  double q = 0.0;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    q += f.eigenvalue(i) * std::norm(f.coeffs()[i]);
  }
  return q;
}

TrigPoly semigroup_apply(const TrigPoly& f, double t) {
  if (!(t >= 0.0)) throw DomainError("semigroup_apply: t must be nonnegative");
  std::vector<Coeff> c(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::exp(-t * f.eigenvalue(i));
  return TrigPoly(f.dim(), f.degree(), std::move(c), f.weights());
}

TrigPoly multiply(const TrigPoly& f, const TrigPoly& g) {
  if (f.dim() != g.dim() || f.weights() != g.weights()) {
    throw DomainError("multiply: factors live on different tori");
  }
  const int degree = f.degree() + g.degree();
  if (degree > kMaxDegree) throw DomainError("multiply: product degree exceeds the cap");
  const int n = 2 * degree + 1;
  const GridValues a = f.on_grid(n);
  const GridValues b = g.on_grid(n);
  std::vector<Coeff> prod(a.values.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a.values[i] * b.values[i];
  std::vector<Coeff> c = separable(std::move(prod), f.dim(), n, analysis(degree, n), n);
  return TrigPoly(f.dim(), degree, std::move(c), f.weights());
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

TrigPoly make_nonneg(std::uint64_t seed, int dim, int degree, std::vector<double> weights) {
  if (degree < 0 || 2 * degree > kMaxDegree) throw DomainError("make_nonneg: degree must be 0..16");
  if (dim < 1 || dim > kMaxDim) throw DomainError("make_nonneg: dimension must be 1..3");
  const int side = 2 * degree + 1;
  const std::size_t total = ipow(side, dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const double scale = 1.0 / std::sqrt(static_cast<double>(total));
  std::vector<Coeff> c(total);
  for (std::size_t i = 0; i <= total / 2; ++i) {
    const std::size_t j = total - 1 - i;
    if (i == j) {
      c[i] = normal(rng) * scale;
    } else {
      const double re = normal(rng);
      const double im = normal(rng);
      c[i] = Coeff(re, im) * (scale / std::numbers::sqrt2);
      c[j] = std::conj(c[i]);
    }
  }
  const TrigPoly p(dim, degree, std::move(c), weights);
  const TrigPoly sq = multiply(p, p);
  std::vector<Coeff> out(sq.coeffs().begin(), sq.coeffs().end());
  out[out.size() / 2] += kNonnegFloor;
  return TrigPoly(dim, sq.degree(), std::move(out), std::move(weights));
}

TrigPoly normalize_l1(const TrigPoly& f) {
  const double mass = f.coeffs()[f.coeffs().size() / 2].real();
  if (!(mass > 0.0)) throw DomainError("normalize_l1: f has no positive mass");
  return f.scaled(1.0 / mass);
}

TrigPoly normalize_l2(const TrigPoly& f) {
  const double l2 = norms(f).l2;
  if (!(l2 > 0.0)) throw DomainError("normalize_l2: f vanishes");
  return f.scaled(1.0 / l2);
}

double log_kernel_at_origin(std::span<const double> weights, double t) {
  const torus::CoefficientSequence seq(
      torus::Explicit{std::vector<double>(weights.begin(), weights.end())});
  return torus::product_kernel(seq, t).log_value;
}

double kernel_at_origin(std::span<const double> weights, double t) {
  return std::exp(log_kernel_at_origin(weights, t));
}

}  // namespace ultrabound::speclab
