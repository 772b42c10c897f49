// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <cstdint>
#include <random>

namespace commitdist {

/// Seeded uniform generator over [0, 1). Draws the mantissa directly from
/// mt19937_64 output, so sequences are identical across platforms and
/// standard libraries.
class UniformRng {
public:
    explicit UniformRng(std::uint64_t seed) : engine_(seed) {}

    double next() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace commitdist
