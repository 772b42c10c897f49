// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "commitdist/half_loc.hpp"

namespace commitdist {

struct EcdfPoint {
    HalfLoc size;
    double cumulative_prob = 0.0;
};

/// Empirical CDF over the raw sample, one point per unique size — no binning.
class Ecdf {
public:
    std::span<const EcdfPoint> points() const { return points_; }
    std::size_t sample_count() const { return n_; }
    HalfLoc min_size() const { return points_.front().size; }
    HalfLoc max_size() const { return points_.back().size; }

    /// Cumulative probability at exactly this size; requires a present size.
    double prob_at(HalfLoc size) const {
        std::size_t i = index_of_nearest(size);
        if (points_[i].size != size) throw std::invalid_argument("ecdf: size not present");
        return points_[i].cumulative_prob;
    }

    /// Index of the point whose size is closest to the target (ties toward
    /// the smaller size).
    std::size_t index_of_nearest(HalfLoc target) const {
        auto it = std::lower_bound(points_.begin(), points_.end(), target,
                                   [](const EcdfPoint& p, HalfLoc s) { return p.size < s; });
        if (it == points_.end()) return points_.size() - 1;
        if (it == points_.begin()) return 0;
        std::size_t hi = static_cast<std::size_t>(it - points_.begin());
        std::size_t lo = hi - 1;
        std::int64_t d_lo = target.twice() - points_[lo].size.twice();
        std::int64_t d_hi = points_[hi].size.twice() - target.twice();
        return d_hi < d_lo ? hi : lo;
    }

    /// Sample percentile (0..100) with linear interpolation between the two
    /// closest order statistics.
    double sample_quantile(double percentile) const {
        if (!(percentile >= 0.0 && percentile <= 100.0))
            throw std::domain_error("ecdf: percentile must lie in [0, 100]");
        double h = static_cast<double>(n_ - 1) * percentile / 100.0;
        auto k = static_cast<std::size_t>(h);
        double frac = h - static_cast<double>(k);
        double lo = order_statistic(k);
        if (frac == 0.0 || k + 1 >= n_) return lo;
        double hi = order_statistic(k + 1);
        return lo + frac * (hi - lo);
    }

    friend Ecdf build_ecdf(std::vector<HalfLoc> sizes);

private:
    // k-th smallest sample value, 0-based, via the cumulative counts
    double order_statistic(std::size_t k) const {
        auto it = std::upper_bound(cum_counts_.begin(), cum_counts_.end(), static_cast<std::int64_t>(k));
        return points_[static_cast<std::size_t>(it - cum_counts_.begin())].size.value();
    }

    std::vector<EcdfPoint> points_;
    std::vector<std::int64_t> cum_counts_;
    std::size_t n_ = 0;
};

inline Ecdf build_ecdf(std::vector<HalfLoc> sizes) {
    if (sizes.empty()) throw std::invalid_argument("ecdf: empty sample");
    for (HalfLoc s : sizes)
        if (s.twice() <= 0) throw std::invalid_argument("ecdf: sizes must be positive");
    std::sort(sizes.begin(), sizes.end());

    Ecdf ecdf;
    ecdf.n_ = sizes.size();
    auto n = static_cast<double>(sizes.size());
    std::int64_t seen = 0;
    for (std::size_t i = 0; i < sizes.size();) {
        std::size_t j = i;
        while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
        seen += static_cast<std::int64_t>(j - i);
        ecdf.points_.push_back({sizes[i], static_cast<double>(seen) / n});
        ecdf.cum_counts_.push_back(seen);
        i = j;
    }
    return ecdf;
}

/// Relative frequency at each occupied grid point (exact, no smoothing).
struct DensityEstimate {
    std::vector<HalfLoc> grid;
    std::vector<double> mass;
};

/// Frequencies on multiples of `resolution` (default: the native 0.5 grid);
/// off-grid values round to the nearest bucket, halves up.
inline DensityEstimate epdf(std::span<const HalfLoc> sizes, HalfLoc resolution = HalfLoc::from_twice(1)) {
    if (sizes.empty()) throw std::invalid_argument("epdf: empty sample");
    if (resolution.twice() <= 0) throw std::domain_error("epdf: resolution must be positive");
    std::vector<std::int64_t> buckets;
    buckets.reserve(sizes.size());
    const std::int64_t res = resolution.twice();
    for (HalfLoc s : sizes) {
        std::int64_t q = (2 * s.twice() + res) / (2 * res);  // round half up
        buckets.push_back(q * res);
    }
    std::sort(buckets.begin(), buckets.end());

    DensityEstimate density;
    auto n = static_cast<double>(buckets.size());
    for (std::size_t i = 0; i < buckets.size();) {
        std::size_t j = i;
        while (j < buckets.size() && buckets[j] == buckets[i]) ++j;
        density.grid.push_back(HalfLoc::from_twice(buckets[i]));
        density.mass.push_back(static_cast<double>(j - i) / n);
        i = j;
    }
    return density;
}

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double p90 = 0.0;
    double p95 = 0.0;
};

inline SummaryStats descriptive_stats(std::span<const HalfLoc> sizes) {
    if (sizes.empty()) throw std::invalid_argument("descriptive_stats: empty sample");
    std::vector<std::int64_t> twice;
    twice.reserve(sizes.size());
    std::int64_t sum = 0;
    for (HalfLoc s : sizes) {
        twice.push_back(s.twice());
        sum += s.twice();
    }
    std::sort(twice.begin(), twice.end());

    auto quantile = [&](double p) {
        double h = static_cast<double>(twice.size() - 1) * p;
        auto k = static_cast<std::size_t>(h);
        double frac = h - static_cast<double>(k);
        double lo = static_cast<double>(twice[k]) / 2.0;
        if (frac == 0.0 || k + 1 >= twice.size()) return lo;
        double hi = static_cast<double>(twice[k + 1]) / 2.0;
        return lo + frac * (hi - lo);
    };

    SummaryStats stats;
    stats.mean = static_cast<double>(sum) / 2.0 / static_cast<double>(twice.size());
    stats.median = quantile(0.5);
    stats.p90 = quantile(0.9);
    stats.p95 = quantile(0.95);
    return stats;
}

}  // namespace commitdist
