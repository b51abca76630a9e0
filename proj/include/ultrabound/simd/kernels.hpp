// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

// Grid reductions with a scalar reference and an AVX2 variant picked at run
// time. Setting ULTRABOUND_SIMD=scalar in the environment forces the
// reference kernels.

#pragma once

#include <span>
#include <string_view>

namespace ultrabound::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// Kernel set used by the dispatching functions below.
Isa active_isa();
/// True when the AVX2 variants were compiled in and the CPU runs them.
bool avx2_available();

struct Kernels {
  double (*reduce_sum)(const double*, std::size_t);
  double (*sum_squares)(const double*, std::size_t);
  double (*sum_abs)(const double*, std::size_t);
  double (*reduce_max)(const double*, std::size_t);
  double (*reduce_min)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum_squared_diff)(const double*, const double*, std::size_t);
  /// dst[i] = min(max(src[i] - lo, 0), width).
  void (*clamp_band)(const double*, double, double, double*, std::size_t);
};

/// Kernel table for a given ISA. Asking for avx2 when it is unavailable
/// returns the scalar table.
const Kernels& kernels(Isa isa);

double reduce_sum(std::span<const double> x);
double sum_squares(std::span<const double> x);
double sum_abs(std::span<const double> x);
/// -inf on an empty span.
double reduce_max(std::span<const double> x);
/// +inf on an empty span.
double reduce_min(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
double sum_squared_diff(std::span<const double> a, std::span<const double> b);
void clamp_band(std::span<const double> src, double lo, double width, std::span<double> dst);

}  // namespace ultrabound::simd
