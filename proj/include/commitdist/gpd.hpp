// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "commitdist/rng.hpp"

namespace commitdist {

// Generalized Pareto Distribution:
//   f(x) = (1/sigma) (1 + xi z)^(-1 - 1/xi),   F(x) = 1 - (1 + xi z)^(-1/xi)
// with z = (x - theta)/sigma, reducing to the exponential forms as xi -> 0.
// Support is x >= theta for xi >= 0 and theta <= x <= theta - sigma/xi for
// xi < 0.

/// Shape below which the exponential (xi = 0) forms are used; combined with
/// log1p/expm1 evaluation this keeps the branch switch continuous.
inline constexpr double kGpdShapeEpsilon = 1e-8;

struct GpdParams {
    double shape = 0.0;     // xi
    double location = 0.0;  // theta
    double scale = 1.0;     // sigma > 0

    void validate() const {
        if (!(scale > 0.0) || !std::isfinite(scale)) throw std::domain_error("gpd: scale must be positive and finite");
        if (!std::isfinite(shape)) throw std::domain_error("gpd: shape must be finite");
        if (!std::isfinite(location)) throw std::domain_error("gpd: location must be finite");
    }

    /// Upper end of the support; +inf unless shape < 0.
    double upper_support() const {
        if (shape < -kGpdShapeEpsilon) return location - scale / shape;
        return std::numeric_limits<double>::infinity();
    }
};

inline double gpd_pdf(double x, const GpdParams& p) {
    p.validate();
    if (x < p.location) return 0.0;
    double z = (x - p.location) / p.scale;
    if (std::abs(p.shape) < kGpdShapeEpsilon) return std::exp(-z) / p.scale;
    double arg = 1.0 + p.shape * z;
    if (arg <= 0.0) return 0.0;
    return std::exp((-1.0 - 1.0 / p.shape) * std::log1p(p.shape * z)) / p.scale;
}

inline double gpd_cdf(double x, const GpdParams& p) {
    p.validate();
    if (x <= p.location) return 0.0;
    double z = (x - p.location) / p.scale;
    if (std::abs(p.shape) < kGpdShapeEpsilon) return -std::expm1(-z);
    double arg = 1.0 + p.shape * z;
    if (arg <= 0.0) return 1.0;  // above the upper support endpoint (shape < 0)
    return -std::expm1(-std::log1p(p.shape * z) / p.shape);
}

inline double gpd_quantile(double prob, const GpdParams& p) {
    p.validate();
    if (!(prob >= 0.0) || prob >= 1.0) throw std::domain_error("gpd: quantile probability must lie in [0, 1)");
    if (prob == 0.0) return p.location;
    if (std::abs(p.shape) < kGpdShapeEpsilon) return p.location - p.scale * std::log1p(-prob);
    // (1 - prob)^(-xi) - 1, evaluated stably
    double growth = std::expm1(-p.shape * std::log1p(-prob));
    return p.location + p.scale / p.shape * growth;
}

/// Inverse-transform sampling; reproducible for a fixed seed.
inline std::vector<double> gpd_sample(std::size_t n, const GpdParams& p, std::uint64_t seed) {
    p.validate();
    UniformRng rng(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(gpd_quantile(rng.next(), p));
    return out;
}

}  // namespace commitdist
