// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "commitdist/detail/parse.hpp"
#include "commitdist/line_class.hpp"
#include "commitdist/types.hpp"

namespace commitdist {

// Log grammar (the output of `git log --numstat --pretty=format:"commit %H %at"`):
//   header line:  commit <hex-id> <unix-seconds>
//   delta line:   <added>\t<removed>\t<path>     ("-" counts mark binary files)
// Blank lines between blocks are ignored.

inline std::vector<RawCommit> parse_numstat_log(std::istream& in) {
    std::vector<RawCommit> commits;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank_line(line)) continue;

        std::string_view view{line};
        if (view.starts_with("commit ")) {
            std::string_view rest = view.substr(7);
            std::size_t space = rest.find(' ');
            if (space == std::string_view::npos || space == 0)
                throw ParseError(line_no, "malformed commit header: expected 'commit <id> <timestamp>'");
            std::string_view id = rest.substr(0, space);
            std::string_view ts_text = rest.substr(space + 1);
            std::int64_t ts = 0;
            if (!detail::parse_i64(ts_text, ts) || ts <= 0)
                throw ParseError(line_no, "malformed commit header: bad timestamp '" + std::string(ts_text) + "'");
            if (!seen_ids.insert(std::string(id)).second)
                throw ParseError(line_no, "duplicate commit id '" + std::string(id) + "'");
            RawCommit commit;
            commit.commit_id = std::string(id);
            commit.timestamp = ts;
            commits.push_back(std::move(commit));
            continue;
        }

        if (commits.empty()) throw ParseError(line_no, "delta line before any commit header");

        std::size_t tab1 = view.find('\t');
        std::size_t tab2 = tab1 == std::string_view::npos ? std::string_view::npos : view.find('\t', tab1 + 1);
        if (tab2 == std::string_view::npos)
            throw ParseError(line_no, "malformed delta line: expected '<added>\\t<removed>\\t<path>'");
        std::string_view added = view.substr(0, tab1);
        std::string_view removed = view.substr(tab1 + 1, tab2 - tab1 - 1);
        std::string_view path = view.substr(tab2 + 1);

        FileDelta delta;
        delta.path = std::string(path);
        if (added == "-" && removed == "-") {
            delta.binary = true;
        } else {
            if (!detail::parse_i64(added, delta.added) || delta.added < 0)
                throw ParseError(line_no, "non-numeric added count '" + std::string(added) + "'");
            if (!detail::parse_i64(removed, delta.removed) || delta.removed < 0)
                throw ParseError(line_no, "non-numeric removed count '" + std::string(removed) + "'");
        }
        commits.back().deltas.push_back(std::move(delta));
    }
    return commits;
}

inline std::vector<RawCommit> parse_numstat_log(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_numstat_log(in);
}

}  // namespace commitdist
