// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "commitdist/detail/parse.hpp"
#include "commitdist/types.hpp"

namespace commitdist {

// Commit-stats CSV. Header is exactly
//   commit_id,timestamp,files,added,removed,size_loc
// with an optional trailing project_id column; size_loc always carries one
// fractional digit (.0 or .5); UTF-8, LF line endings.

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"' && current.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (quoted) throw ParseError(line_no, "unterminated quoted field");
    fields.push_back(std::move(current));
    return fields;
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline const std::vector<std::string>& stats_columns() {
    static const std::vector<std::string> cols = {"commit_id", "timestamp", "files", "added", "removed", "size_loc"};
    return cols;
}

}  // namespace detail

inline void store_commit_stats(const std::vector<CommitStats>& records, std::ostream& out) {
    bool with_project = false;
    for (const CommitStats& r : records)
        if (r.project_id) with_project = true;

    out << "commit_id,timestamp,files,added,removed,size_loc";
    if (with_project) out << ",project_id";
    out << '\n';
    for (const CommitStats& r : records) {
        out << detail::csv_escape(r.commit_id) << ',' << r.timestamp << ',' << r.files << ',' << r.added << ','
            << r.removed << ',' << r.size.str();
        if (with_project) out << ',' << detail::csv_escape(r.project_id.value_or(""));
        out << '\n';
    }
}

/// Writes via a temporary file and renames into place, so a failed run never
/// leaves a partial CSV behind.
inline void store_commit_stats(const std::vector<CommitStats>& records, const std::filesystem::path& path) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        store_commit_stats(records, out);
        if (!out) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

inline std::vector<CommitStats> load_commit_stats(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError(1, "missing commit-stats header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> header = detail::split_csv_row(line, line_no);
    const std::vector<std::string>& expected = detail::stats_columns();
    bool with_project = header.size() == expected.size() + 1;
    if (header.size() < expected.size())
        throw ParseError(line_no, "missing column '" + expected[header.size()] + "' in commit-stats header");
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (header[i] != expected[i])
            throw ParseError(line_no, "unknown column '" + header[i] + "' in commit-stats header (expected '" +
                                          expected[i] + "')");
    if (with_project && header.back() != "project_id")
        throw ParseError(line_no, "unknown column '" + header.back() + "' in commit-stats header");
    if (header.size() > expected.size() + 1)
        throw ParseError(line_no, "unknown column '" + header[expected.size() + 1] + "' in commit-stats header");

    std::vector<CommitStats> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = detail::split_csv_row(line, line_no);
        if (fields.size() != header.size())
            throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                          std::to_string(fields.size()));
        CommitStats r;
        r.commit_id = fields[0];
        if (r.commit_id.empty()) throw ParseError(line_no, "empty commit_id");
        if (!detail::parse_i64(fields[1], r.timestamp) || r.timestamp <= 0)
            throw ParseError(line_no, "bad timestamp '" + fields[1] + "'");
        if (!detail::parse_i64(fields[2], r.files) || r.files < 0)
            throw ParseError(line_no, "bad files count '" + fields[2] + "'");
        if (!detail::parse_i64(fields[3], r.added) || r.added < 0)
            throw ParseError(line_no, "bad added count '" + fields[3] + "'");
        if (!detail::parse_i64(fields[4], r.removed) || r.removed < 0)
            throw ParseError(line_no, "bad removed count '" + fields[4] + "'");
        std::optional<HalfLoc> size = HalfLoc::parse(fields[5]);
        if (!size || size->twice() < 0)
            throw ParseError(line_no, "size_loc '" + fields[5] + "' is not a non-negative .0/.5 decimal");
        r.size = *size;
        if (with_project && !fields[6].empty()) r.project_id = fields[6];
        records.push_back(std::move(r));
    }
    return records;
}

inline std::vector<CommitStats> load_commit_stats(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return load_commit_stats(in);
}

}  // namespace commitdist
