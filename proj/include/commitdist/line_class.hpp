// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace commitdist {

enum class LineClass { Code, Comment, Blank };

/// Comment markers for one language. Line markers comment to end of line;
/// block markers are (open, close) pairs that may span lines.
struct CommentSyntax {
    std::string language_key;
    std::vector<std::string> line_markers;
    std::vector<std::pair<std::string, std::string>> block_markers;
};

/// Tracks which block-comment pair (if any) is open across consecutive lines
/// of one file. Default-constructed state means "not inside a block".
struct BlockState {
    int open_pair = -1;
    explicit operator bool() const { return open_pair >= 0; }
    friend bool operator==(BlockState, BlockState) = default;
};

namespace detail {

inline bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

inline bool starts_with_at(std::string_view line, std::size_t pos, std::string_view marker) {
    return !marker.empty() && line.substr(pos, marker.size()) == marker;
}

}  // namespace detail

/// Classifies one line and threads block-comment state to the next line.
/// A line is Blank iff it is all whitespace (even inside a block comment);
/// it is Comment iff every non-whitespace character sits inside a comment;
/// anything else is Code (so mixed code+comment lines count as code).
inline std::pair<LineClass, BlockState> classify_line(std::string_view line, const CommentSyntax& syntax,
                                                      BlockState state = {}) {
    bool saw_code = false;
    bool saw_comment = false;
    std::size_t pos = 0;
    while (pos < line.size()) {
        if (state) {
            const std::string& close = syntax.block_markers[static_cast<std::size_t>(state.open_pair)].second;
            std::size_t end = line.find(close, pos);
            // whitespace-only stretches inside a block do not make the line non-blank
            std::size_t stop = end == std::string_view::npos ? line.size() : end;
            for (std::size_t i = pos; i < stop && !saw_comment; ++i)
                if (!detail::is_space(line[i])) saw_comment = true;
            if (end == std::string_view::npos) {
                pos = line.size();
            } else {
                saw_comment = true;  // the close marker itself
                pos = end + close.size();
                state = BlockState{};
            }
            continue;
        }
        if (detail::is_space(line[pos])) {
            ++pos;
            continue;
        }
        bool matched = false;
        for (const std::string& marker : syntax.line_markers) {
            if (detail::starts_with_at(line, pos, marker)) {
                saw_comment = true;
                pos = line.size();
                matched = true;
                break;
            }
        }
        if (matched) continue;
        for (std::size_t j = 0; j < syntax.block_markers.size(); ++j) {
            if (detail::starts_with_at(line, pos, syntax.block_markers[j].first)) {
                saw_comment = true;
                pos += syntax.block_markers[j].first.size();
                state = BlockState{static_cast<int>(j)};
                matched = true;
                break;
            }
        }
        if (matched) continue;
        saw_code = true;
        ++pos;
    }
    LineClass cls = saw_code ? LineClass::Code : (saw_comment ? LineClass::Comment : LineClass::Blank);
    return {cls, state};
}

struct LocCounts {
    std::int64_t sloc = 0;
    std::int64_t cl = 0;
    std::int64_t blank = 0;
    std::int64_t loc() const { return sloc + cl; }
};

inline LocCounts count_loc(std::span<const std::string> lines, const CommentSyntax& syntax) {
    LocCounts counts;
    BlockState state;
    for (const std::string& line : lines) {
        auto [cls, next] = classify_line(line, syntax, state);
        state = next;
        switch (cls) {
            case LineClass::Code: ++counts.sloc; break;
            case LineClass::Comment: ++counts.cl; break;
            case LineClass::Blank: ++counts.blank; break;
        }
    }
    return counts;
}

inline bool is_blank_line(std::string_view line) {
    for (char c : line)
        if (!detail::is_space(c)) return false;
    return true;
}

/// Built-in comment syntax table, keyed by file extension. Unknown extensions
/// get no markers, so every non-blank line classifies as code.
inline const CommentSyntax& syntax_for_path(std::string_view path) {
    static const CommentSyntax c_family{"c-family", {"//"}, {{"/*", "*/"}}};
    static const CommentSyntax hash{"script", {"#"}, {}};
    static const CommentSyntax lisp{"lisp", {";"}, {}};
    static const CommentSyntax dash{"sql-haskell", {"--"}, {}};
    static const CommentSyntax unknown{"unknown", {}, {}};

    std::size_t dot = path.find_last_of('.');
    std::size_t slash = path.find_last_of("/\\");
    if (dot == std::string_view::npos || (slash != std::string_view::npos && dot < slash)) return unknown;
    std::string ext;
    for (char ch : path.substr(dot + 1)) ext += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));

    static const std::array<std::string_view, 16> c_exts = {"c",  "h",  "cpp", "hpp", "cc",   "hh",   "cxx", "hxx",
                                                            "java", "js", "ts",  "cs",  "go", "rs", "swift", "kt"};
    static const std::array<std::string_view, 9> hash_exts = {"sh", "bash", "py", "rb", "pl", "yaml", "yml", "mk", "cmake"};
    static const std::array<std::string_view, 5> lisp_exts = {"lisp", "el", "clj", "scm", "rkt"};
    static const std::array<std::string_view, 3> dash_exts = {"sql", "hs", "lua"};

    for (auto e : c_exts)
        if (ext == e) return c_family;
    for (auto e : hash_exts)
        if (ext == e) return hash;
    for (auto e : lisp_exts)
        if (ext == e) return lisp;
    for (auto e : dash_exts)
        if (ext == e) return dash;
    return unknown;
}

}  // namespace commitdist
