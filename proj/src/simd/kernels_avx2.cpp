// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx2 -mfma; only reached after a CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_internal.hpp"

namespace ultrabound::simd::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

double reduce_sum(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
  }
  if (i + 4 <= n) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
    i += 4;
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double sum_squares(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(x + i);
    const __m256d v1 = _mm256_loadu_pd(x + i + 4);
    a0 = _mm256_fmadd_pd(v0, v0, a0);
    a1 = _mm256_fmadd_pd(v1, v1, a1);
  }
  if (i + 4 <= n) {
    const __m256d v = _mm256_loadu_pd(x + i);
    a0 = _mm256_fmadd_pd(v, v, a0);
    i += 4;
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

double sum_abs(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, abs_pd(_mm256_loadu_pd(x + i)));
    a1 = _mm256_add_pd(a1, abs_pd(_mm256_loadu_pd(x + i + 4)));
  }
  if (i + 4 <= n) {
    a0 = _mm256_add_pd(a0, abs_pd(_mm256_loadu_pd(x + i)));
    i += 4;
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += std::abs(x[i]);
  return s;
}

double reduce_max(const double* x, std::size_t n) {
  __m256d m = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_loadu_pd(x + i));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, m);
  double r = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
  for (; i < n; ++i) r = std::max(r, x[i]);
  return r;
}

double reduce_min(const double* x, std::size_t n) {
  __m256d m = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_min_pd(m, _mm256_loadu_pd(x + i));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, m);
  double r = std::min(std::min(lane[0], lane[1]), std::min(lane[2], lane[3]));
  for (; i < n; ++i) r = std::min(r, x[i]);
  return r;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), a1);
  }
  if (i + 4 <= n) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), a0);
    i += 4;
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squared_diff(const double* a, const double* b, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    a0 = _mm256_fmadd_pd(d0, d0, a0);
    a1 = _mm256_fmadd_pd(d1, d1, a1);
  }
  if (i + 4 <= n) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    a0 = _mm256_fmadd_pd(d, d, a0);
    i += 4;
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void clamp_band(const double* src, double lo, double width, double* dst, std::size_t n) {
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vw = _mm256_set1_pd(width);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(src + i), vlo);
    _mm256_storeu_pd(dst + i, _mm256_min_pd(_mm256_max_pd(d, zero), vw));
  }
  for (; i < n; ++i) dst[i] = std::min(std::max(src[i] - lo, 0.0), width);
}

}  // namespace

const Kernels kAvx2 = {reduce_sum, sum_squares,      sum_abs,   reduce_max,
                       reduce_min, dot, sum_squared_diff, clamp_band};

}  // namespace ultrabound::simd::detail
