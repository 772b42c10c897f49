// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "commitdist/numstat.hpp"
#include "commitdist/types.hpp"

namespace commitdist {

namespace detail {

// "+++ b/src/x.c\t2008-03-01 ..." -> "src/x.c"
inline std::string diff_header_path(std::string_view line) {
    std::string_view path = line.substr(4);
    std::size_t tab = path.find('\t');
    if (tab != std::string_view::npos) path = path.substr(0, tab);
    if (path.starts_with("a/") || path.starts_with("b/")) path = path.substr(2);
    return std::string(path);
}

// Parses one side of "@@ -start,count +start,count @@"; count defaults to 1.
inline bool parse_hunk_side(std::string_view& text, char sign, std::int64_t& count) {
    if (text.empty() || text.front() != sign) return false;
    text.remove_prefix(1);
    std::size_t i = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == 0) return false;
    text.remove_prefix(i);
    count = 1;
    if (!text.empty() && text.front() == ',') {
        text.remove_prefix(1);
        std::size_t j = 0;
        std::int64_t value = 0;
        while (j < text.size() && text[j] >= '0' && text[j] <= '9') {
            value = value * 10 + (text[j] - '0');
            ++j;
        }
        if (j == 0) return false;
        text.remove_prefix(j);
        count = value;
    }
    return true;
}

inline bool parse_hunk_header(std::string_view line, std::int64_t& old_count, std::int64_t& new_count) {
    if (!line.starts_with("@@ ")) return false;
    std::string_view rest = line.substr(3);
    if (!parse_hunk_side(rest, '-', old_count)) return false;
    if (!rest.starts_with(" ")) return false;
    rest.remove_prefix(1);
    if (!parse_hunk_side(rest, '+', new_count)) return false;
    return rest.starts_with(" @@");
}

}  // namespace detail

/// Parses a unified diff into per-file deltas with line texts. Hunk headers
/// and context lines are excluded from the counts; unknown lines outside
/// hunks are ignored; a hunk cut short by EOF or a stray line is an error.
inline std::vector<FileDelta> parse_unified_diff(std::string_view text) {
    std::vector<FileDelta> deltas;
    bool file_open = false;
    bool saw_old_header = false;
    std::string pending_old_path;
    std::int64_t old_left = 0;
    std::int64_t new_left = 0;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        if (pos == text.size()) {
            if (old_left > 0 || new_left > 0) throw ParseError(line_no, "truncated hunk at end of input");
            break;
        }
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (old_left > 0 || new_left > 0) {
            if (line.starts_with("\\")) continue;  // "\ No newline at end of file"
            char leader = line.empty() ? ' ' : line.front();
            std::string_view body = line.empty() ? line : line.substr(1);
            if (leader == '+' && new_left > 0) {
                deltas.back().added_texts->emplace_back(body);
                ++deltas.back().added;
                --new_left;
            } else if (leader == '-' && old_left > 0) {
                deltas.back().removed_texts->emplace_back(body);
                ++deltas.back().removed;
                --old_left;
            } else if (leader == ' ' && old_left > 0 && new_left > 0) {
                --old_left;
                --new_left;
            } else {
                throw ParseError(line_no, "unexpected line inside hunk");
            }
            continue;
        }

        if (line.starts_with("--- ")) {
            pending_old_path = detail::diff_header_path(line);
            saw_old_header = true;
            continue;
        }
        if (line.starts_with("+++ ") && saw_old_header) {
            FileDelta delta;
            std::string new_path = detail::diff_header_path(line);
            delta.path = new_path == "/dev/null" ? pending_old_path : new_path;
            delta.added_texts.emplace();
            delta.removed_texts.emplace();
            deltas.push_back(std::move(delta));
            file_open = true;
            saw_old_header = false;
            continue;
        }
        std::int64_t old_count = 0;
        std::int64_t new_count = 0;
        if (detail::parse_hunk_header(line, old_count, new_count)) {
            if (!file_open) throw ParseError(line_no, "hunk header before file header");
            old_left = old_count;
            new_left = new_count;
            continue;
        }
        if (line.starts_with("Binary files ") && line.ends_with(" differ")) {
            FileDelta delta;
            delta.binary = true;
            if (file_open && deltas.back().added == 0 && deltas.back().removed == 0) {
                deltas.back().binary = true;
                deltas.back().added_texts.reset();
                deltas.back().removed_texts.reset();
            } else {
                std::string_view names = line.substr(13, line.size() - 13 - 7);
                std::size_t and_pos = names.find(" and ");
                std::string_view path = and_pos == std::string_view::npos ? names : names.substr(0, and_pos);
                if (path.starts_with("a/") || path.starts_with("b/")) path = path.substr(2);
                delta.path = std::string(path);
                deltas.push_back(std::move(delta));
            }
            file_open = false;
            continue;
        }
        // preamble and anything else outside hunks: ignored
    }
    return deltas;
}

}  // namespace commitdist
