// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commitdist/half_loc.hpp"
#include "commitdist/line_class.hpp"
#include "commitdist/types.hpp"

namespace commitdist {

// A diff reports a lines added and r lines removed per file, but cannot tell
// a changed line (one removal plus one addition) from an independent removal
// and addition. The true work therefore lies between max(a, r) — every
// possible pair is one changed line — and a + r — no line was changed. The
// estimator takes the midpoint, which is why sizes live on the 0.5 grid.

inline std::int64_t lower_bound(std::int64_t added, std::int64_t removed) { return std::max(added, removed); }

inline std::int64_t upper_bound(std::int64_t added, std::int64_t removed) { return added + removed; }

inline HalfLoc diff_chunk_size(std::int64_t added, std::int64_t removed) {
    return HalfLoc::from_twice(lower_bound(added, removed) + upper_bound(added, removed));
}

struct ChunkEstimate {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    HalfLoc size;
};

inline ChunkEstimate estimate_chunk(std::int64_t added, std::int64_t removed) {
    return {lower_bound(added, removed), upper_bound(added, removed), diff_chunk_size(added, removed)};
}

struct CommitSize {
    std::string commit_id;
    HalfLoc size;
    std::int64_t chunk_count = 0;  // non-binary files
};

/// Sums per-file chunk estimates; binary deltas contribute nothing.
inline CommitSize commit_size(std::span<const FileDelta> deltas) {
    CommitSize total;
    for (const FileDelta& d : deltas) {
        if (d.binary) continue;
        total.size += diff_chunk_size(d.added, d.removed);
        ++total.chunk_count;
    }
    return total;
}

inline CommitSize commit_size(const RawCommit& commit) {
    CommitSize total = commit_size(std::span<const FileDelta>(commit.deltas));
    total.commit_id = commit.commit_id;
    return total;
}

/// Effective (added, removed) counts for sizing. With line texts available,
/// blank lines are dropped so counts measure LoC; bare counts pass through.
inline std::pair<std::int64_t, std::int64_t> effective_counts(const FileDelta& delta, bool count_blank_lines = false) {
    if (delta.binary) return {0, 0};
    if (count_blank_lines || !delta.added_texts || !delta.removed_texts) return {delta.added, delta.removed};
    auto non_blank = [](const std::vector<std::string>& lines) {
        std::int64_t n = 0;
        for (const std::string& line : lines)
            if (!is_blank_line(line)) ++n;
        return n;
    };
    return {non_blank(*delta.added_texts), non_blank(*delta.removed_texts)};
}

/// Aggregates one commit into a stats row: totals over files plus the
/// estimated size.
inline CommitStats make_commit_stats(const RawCommit& commit, bool count_blank_lines = false) {
    CommitStats stats;
    stats.commit_id = commit.commit_id;
    stats.timestamp = commit.timestamp;
    stats.files = static_cast<std::int64_t>(commit.deltas.size());
    for (const FileDelta& d : commit.deltas) {
        auto [a, r] = effective_counts(d, count_blank_lines);
        stats.added += a;
        stats.removed += r;
        if (!d.binary) stats.size += diff_chunk_size(a, r);
    }
    return stats;
}

/// Levenshtein distance normalized by the longer string; 0 for two empties.
inline double normalized_levenshtein(std::string_view a, std::string_view b) {
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    if (m == 0 && n == 0) return 0.0;
    if (m == 0 || n == 0) return 1.0;
    std::vector<std::size_t> prev(n + 1);
    std::vector<std::size_t> curr(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= m; ++i) {
        curr[0] = i;
        for (std::size_t j = 1; j <= n; ++j) {
            std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, prev[j - 1] + cost});
        }
        std::swap(prev, curr);
    }
    return static_cast<double>(prev[n]) / static_cast<double>(std::max(m, n));
}

struct ChangedLineEstimate {
    std::int64_t changed = 0;
    std::int64_t work = 0;  // added + removed - changed
};

/// Exact-sizing oracle: greedily pairs each removed line with its most
/// similar unmatched added line; pairs within the similarity threshold count
/// as one changed line. Quadratic, intended for validation at small scale.
inline ChangedLineEstimate levenshtein_chunk_size(std::span<const std::string> removed_texts,
                                                  std::span<const std::string> added_texts, double tau = 0.4) {
    std::vector<bool> matched(added_texts.size(), false);
    std::int64_t changed = 0;
    for (const std::string& removed : removed_texts) {
        double best = 2.0;
        std::size_t best_index = added_texts.size();
        for (std::size_t j = 0; j < added_texts.size(); ++j) {
            if (matched[j]) continue;
            double dist = normalized_levenshtein(removed, added_texts[j]);
            if (dist < best) {
                best = dist;
                best_index = j;
            }
        }
        if (best_index < added_texts.size() && best <= tau) {
            matched[best_index] = true;
            ++changed;
        }
    }
    std::int64_t total = static_cast<std::int64_t>(removed_texts.size() + added_texts.size());
    return {changed, total - changed};
}

}  // namespace commitdist
