// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace ultrabound {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ultrabound
