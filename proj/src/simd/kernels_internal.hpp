// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ultrabound/simd/kernels.hpp"

namespace ultrabound::simd::detail {

extern const Kernels kScalar;
#if ULTRABOUND_HAVE_AVX2
extern const Kernels kAvx2;
#endif

}  // namespace ultrabound::simd::detail
