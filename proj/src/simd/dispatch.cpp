// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"
#include "ultrabound/error.hpp"

namespace ultrabound::simd {
namespace {

bool cpu_has_avx2() {
#if ULTRABOUND_HAVE_AVX2 && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  const char* env = std::getenv("ULTRABOUND_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

const Kernels& active() {
  static const Kernels& k = kernels(detect());
  return k;
}

void require_same_size(std::size_t a, std::size_t b, const char* op) {
  if (a != b) throw DomainError(std::string(op) + ": size mismatch");
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() { return cpu_has_avx2(); }

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

const Kernels& kernels(Isa isa) {
#if ULTRABOUND_HAVE_AVX2
  if (isa == Isa::avx2 && cpu_has_avx2()) return detail::kAvx2;
#endif
  (void)isa;
  return detail::kScalar;
}

double reduce_sum(std::span<const double> x) { return active().reduce_sum(x.data(), x.size()); }
double sum_squares(std::span<const double> x) { return active().sum_squares(x.data(), x.size()); }
double sum_abs(std::span<const double> x) { return active().sum_abs(x.data(), x.size()); }
double reduce_max(std::span<const double> x) { return active().reduce_max(x.data(), x.size()); }
double reduce_min(std::span<const double> x) { return active().reduce_min(x.data(), x.size()); }

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "dot");
  return active().dot(a.data(), b.data(), a.size());
}

double sum_squared_diff(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "sum_squared_diff");
  return active().sum_squared_diff(a.data(), b.data(), a.size());
}

void clamp_band(std::span<const double> src, double lo, double width, std::span<double> dst) {
  require_same_size(src.size(), dst.size(), "clamp_band");
  active().clamp_band(src.data(), lo, width, dst.data(), src.size());
}

}  // namespace ultrabound::simd
