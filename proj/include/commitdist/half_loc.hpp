// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace commitdist {

/// A line count on the 0.5 grid, stored as twice the value so sums stay exact.
class HalfLoc {
public:
    constexpr HalfLoc() = default;

    static constexpr HalfLoc from_twice(std::int64_t twice) { return HalfLoc{twice}; }
    static constexpr HalfLoc from_int(std::int64_t lines) { return HalfLoc{2 * lines}; }

    constexpr std::int64_t twice() const { return twice_; }
    constexpr double value() const { return static_cast<double>(twice_) / 2.0; }
    constexpr bool integral() const { return twice_ % 2 == 0; }

    constexpr HalfLoc& operator+=(HalfLoc other) {
        twice_ += other.twice_;
        return *this;
    }
    friend constexpr HalfLoc operator+(HalfLoc a, HalfLoc b) { return HalfLoc{a.twice_ + b.twice_}; }
    friend constexpr HalfLoc operator-(HalfLoc a, HalfLoc b) { return HalfLoc{a.twice_ - b.twice_}; }
    friend constexpr auto operator<=>(HalfLoc a, HalfLoc b) = default;

    /// Formats with exactly one fractional digit: "16.5", "3.0".
    std::string str() const {
        std::int64_t t = twice_;
        std::string sign;
        if (t < 0) {
            sign = "-";
            t = -t;
        }
        return sign + std::to_string(t / 2) + (t % 2 != 0 ? ".5" : ".0");
    }

    /// Accepts "16", "16.0", "16.5"; anything off the grid yields nullopt.
    static std::optional<HalfLoc> parse(std::string_view text) {
        if (text.empty()) return std::nullopt;
        bool negative = false;
        std::size_t i = 0;
        if (text[0] == '-') {
            negative = true;
            i = 1;
        }
        std::int64_t whole = 0;
        std::size_t digits = 0;
        for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, ++digits) {
            if (whole > (std::numeric_limits<std::int64_t>::max() - 9) / 10) return std::nullopt;
            whole = whole * 10 + (text[i] - '0');
        }
        if (digits == 0) return std::nullopt;
        std::int64_t twice = 2 * whole;
        if (i < text.size()) {
            if (text[i] != '.' || i + 2 != text.size()) return std::nullopt;
            char frac = text[i + 1];
            if (frac == '5')
                twice += 1;
            else if (frac != '0')
                return std::nullopt;
        }
        return HalfLoc{negative ? -twice : twice};
    }

private:
    constexpr explicit HalfLoc(std::int64_t twice) : twice_(twice) {}
    std::int64_t twice_ = 0;
};

/// Smallest grid value >= x. Used when discretizing continuous draws, so that
/// P(result <= s) equals P(x <= s) at every grid point s.
inline HalfLoc ceil_to_half(double x) {
    double twice = std::ceil(2.0 * x);
    if (!(std::abs(twice) < 0x1.0p62)) throw std::overflow_error("value off the representable half-line grid");
    return HalfLoc::from_twice(static_cast<std::int64_t>(twice));
}

}  // namespace commitdist
