// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "commitdist/half_loc.hpp"

namespace commitdist {

/// Per-file added/removed line counts from one commit's diff. Line texts are
/// carried only when the source format exposes them (unified diffs do,
/// numstat logs do not).
struct FileDelta {
    std::string path;
    std::int64_t added = 0;
    std::int64_t removed = 0;
    std::optional<std::vector<std::string>> added_texts;
    std::optional<std::vector<std::string>> removed_texts;
    bool binary = false;
};

struct RawCommit {
    std::string commit_id;
    std::int64_t timestamp = 0;  // seconds since epoch, UTC; > 0
    std::optional<std::string> author_id;
    std::vector<FileDelta> deltas;
};

/// One row of the commit-stats table: per-commit aggregates plus the
/// estimated size. This is the unit persisted to CSV.
struct CommitStats {
    std::string commit_id;
    std::int64_t timestamp = 0;
    std::int64_t files = 0;
    std::int64_t added = 0;
    std::int64_t removed = 0;
    HalfLoc size;
    std::optional<std::string> project_id;

    friend bool operator==(const CommitStats&, const CommitStats&) = default;
};

/// Malformed input; carries the 1-based line number where parsing stopped.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line_no_(line_no) {}

    std::size_t line_no() const { return line_no_; }

private:
    std::size_t line_no_;
};

}  // namespace commitdist
