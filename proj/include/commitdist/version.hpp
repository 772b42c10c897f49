// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <string_view>

namespace commitdist {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace commitdist
