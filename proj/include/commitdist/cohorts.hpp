// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "commitdist/ecdf.hpp"
#include "commitdist/fitting.hpp"
#include "commitdist/types.hpp"

namespace commitdist {

// Project cohorts by developer count: Small 1-5, Medium 6-47, Large 48+.

enum class SizeClass { Small, Medium, Large };

inline std::string_view size_class_name(SizeClass cls) {
    switch (cls) {
        case SizeClass::Small: return "small";
        case SizeClass::Medium: return "medium";
        case SizeClass::Large: return "large";
    }
    return "unknown";
}

inline SizeClass size_class(std::int64_t developer_count) {
    if (developer_count < 1) throw std::domain_error("size_class: developer count must be at least 1");
    if (developer_count <= 5) return SizeClass::Small;
    if (developer_count <= 47) return SizeClass::Medium;
    return SizeClass::Large;
}

struct ProjectMeta {
    std::string project_id;
    std::int64_t developer_count = 1;
};

/// Distinct author identifiers in a commit history: the observable
/// developer-count proxy when no project metadata is supplied.
inline std::int64_t observed_developer_count(std::span<const RawCommit> commits) {
    std::set<std::string> authors;
    for (const RawCommit& commit : commits)
        if (commit.author_id) authors.insert(*commit.author_id);
    return static_cast<std::int64_t>(authors.size());
}

struct ActivityResult {
    bool active = false;
    bool vacuous = false;  // no commits in either window; the ratio rule holds trivially
    std::int64_t recent_commits = 0;
    std::int64_t prior_commits = 0;
};

/// Activity rule over 24 monthly commit counts, most recent month first:
/// active iff the last 12 months carry at least 60% of the commits of the 12
/// months before that. Integer arithmetic keeps the boundary exact.
inline ActivityResult is_active(std::span<const std::int64_t> monthly_counts) {
    if (monthly_counts.size() != 24) throw std::invalid_argument("is_active: expected 24 monthly counts");
    ActivityResult result;
    for (std::size_t i = 0; i < 12; ++i) result.recent_commits += monthly_counts[i];
    for (std::size_t i = 12; i < 24; ++i) result.prior_commits += monthly_counts[i];
    result.active = 5 * result.recent_commits >= 3 * result.prior_commits;
    result.vacuous = result.recent_commits == 0 && result.prior_commits == 0;
    return result;
}

namespace detail {

/// as_of shifted back by `months_back` calendar months, day clamped to the
/// target month's end (Mar 31 - 1 month -> Feb 28/29).
inline std::chrono::sys_days shift_months_back(std::chrono::year_month_day as_of, int months_back) {
    std::chrono::year_month_day shifted = as_of - std::chrono::months(months_back);
    if (!shifted.ok()) shifted = shifted.year() / shifted.month() / std::chrono::last;
    return std::chrono::sys_days(shifted);
}

}  // namespace detail

/// Buckets a commit timestamp into one of 24 month windows preceding as_of
/// (0 = most recent); -1 when the commit falls outside the 24-month span.
/// Windows are calendar-month shifts anchored at the as_of date, UTC.
inline int month_index(std::int64_t timestamp, std::chrono::year_month_day as_of) {
    std::chrono::sys_days day = std::chrono::floor<std::chrono::days>(
        std::chrono::sys_seconds(std::chrono::seconds(timestamp)));
    if (day >= std::chrono::sys_days(as_of)) return -1;
    for (int k = 1; k <= 24; ++k)
        if (day >= detail::shift_months_back(as_of, k)) return k - 1;
    return -1;
}

/// "YYYY-MM-DD" in UTC; anything else throws.
inline std::chrono::year_month_day parse_date(std::string_view text) {
    auto digits = [&](std::size_t pos, std::size_t count) -> int {
        int value = 0;
        for (std::size_t i = pos; i < pos + count; ++i) {
            if (i >= text.size() || text[i] < '0' || text[i] > '9')
                throw std::invalid_argument("expected date in YYYY-MM-DD form, got '" + std::string(text) + "'");
            value = value * 10 + (text[i] - '0');
        }
        return value;
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw std::invalid_argument("expected date in YYYY-MM-DD form, got '" + std::string(text) + "'");
    std::chrono::year_month_day ymd{std::chrono::year(digits(0, 4)), std::chrono::month(unsigned(digits(5, 2))),
                                    std::chrono::day(unsigned(digits(8, 2)))};
    if (!ymd.ok()) throw std::invalid_argument("invalid calendar date '" + std::string(text) + "'");
    return ymd;
}

/// Monthly commit counts (most recent first) for the 24 months before as_of.
inline std::vector<std::int64_t> monthly_commit_counts(std::span<const std::int64_t> timestamps,
                                                       std::chrono::year_month_day as_of) {
    std::vector<std::int64_t> counts(24, 0);
    for (std::int64_t ts : timestamps) {
        int index = month_index(ts, as_of);
        if (index >= 0) ++counts[static_cast<std::size_t>(index)];
    }
    return counts;
}

struct CohortClassResult {
    SizeClass cls = SizeClass::Small;
    std::size_t commit_count = 0;
    SummaryStats stats;
    FitResult fit;
};

struct CohortDelta {
    double threshold = 0.0;
    SizeClass upper = SizeClass::Large;  // class with more developers
    SizeClass lower = SizeClass::Small;
    double delta = 0.0;  // F_upper(threshold) - F_lower(threshold)
};

struct CohortReport {
    std::vector<CohortClassResult> classes;
    std::vector<CohortDelta> deltas;
    std::vector<std::string> warnings;
};

/// Runs the full fitting pipeline per size class and compares the fitted
/// CDFs at the requested thresholds. Classes with too few commits are
/// skipped with a warning instead of failing the report.
inline CohortReport cohort_fit(const std::map<SizeClass, std::vector<HalfLoc>>& sizes_by_class, const FitConfig& cfg,
                               std::span<const double> thresholds, std::size_t min_samples = 1000) {
    CohortReport report;
    for (auto& [cls, sizes] : sizes_by_class) {
        if (sizes.size() < min_samples) {
            report.warnings.push_back("class '" + std::string(size_class_name(cls)) + "' skipped: " +
                                      std::to_string(sizes.size()) + " commits < " + std::to_string(min_samples));
            continue;
        }
        CohortClassResult entry;
        entry.cls = cls;
        entry.commit_count = sizes.size();
        entry.stats = descriptive_stats(sizes);
        Ecdf ecdf = build_ecdf(sizes);
        double theta = select_location(ecdf, cfg);
        entry.fit = fit_lsq(ecdf, Family::Gpd, theta, cfg);
        report.classes.push_back(std::move(entry));
    }

    for (double threshold : thresholds) {
        for (std::size_t hi = 0; hi < report.classes.size(); ++hi) {
            for (std::size_t lo = 0; lo < report.classes.size(); ++lo) {
                if (report.classes[hi].cls <= report.classes[lo].cls) continue;
                CohortDelta delta;
                delta.threshold = threshold;
                delta.upper = report.classes[hi].cls;
                delta.lower = report.classes[lo].cls;
                delta.delta = family_cdf(threshold, report.classes[hi].fit.model) -
                              family_cdf(threshold, report.classes[lo].fit.model);
                report.deltas.push_back(delta);
            }
        }
    }
    return report;
}

inline CohortReport cohort_fit(const std::map<SizeClass, std::vector<HalfLoc>>& sizes_by_class, const FitConfig& cfg) {
    static constexpr double kDefaultThreshold[] = {13.0};
    return cohort_fit(sizes_by_class, cfg, kDefaultThreshold);
}

}  // namespace commitdist
