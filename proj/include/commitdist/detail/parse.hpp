// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <charconv>
#include <cstdint>
#include <string_view>
#include <system_error>

namespace commitdist::detail {

inline bool parse_i64(std::string_view text, std::int64_t& out) {
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace commitdist::detail
