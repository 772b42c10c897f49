// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "commitdist/cohorts.hpp"
#include "commitdist/commit_stats_io.hpp"
#include "commitdist/ecdf.hpp"
#include "commitdist/fitting.hpp"
#include "commitdist/version.hpp"

namespace commitdist {

// Assembles analysis results into a JSON report and plot-ready CSV series.
// Everything here formats numbers computed elsewhere; reruns on identical
// inputs produce identical bytes except for the generation timestamp.

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

inline std::string fnv1a64_hex_of_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for hashing");
    std::uint64_t hash = 0xcbf29ce484222325ull;
    char buffer[4096];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001b3ull;
        }
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(hash));
    return out;
}

inline std::string utc_timestamp_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

struct InputFileInfo {
    std::string path;
    std::string fnv1a64;
};

struct AnalysisReport {
    std::string tool_version{kVersion};
    std::string generated_at;
    std::vector<InputFileInfo> inputs;
    std::size_t record_count = 0;
    SummaryStats stats;
    FitResult model;  // the selected (top-ranked) fit
    std::vector<FitResult> families;
    std::optional<CohortReport> cohorts;
    std::vector<std::uint64_t> seeds;
    ThetaGrid theta_grid;
    double truncation_percentile = 95.0;
};

namespace detail {

inline nlohmann::json params_json(const FamilyModel& model) {
    nlohmann::json j;
    switch (model.family) {
        case Family::Gpd:
            j["xi"] = model.params[0];
            j["theta"] = model.params[1];
            j["sigma"] = model.params[2];
            break;
        case Family::Exponential:
            j["lambda"] = model.params[0];
            j["theta"] = model.params[1];
            break;
        case Family::Pareto:
            j["xm"] = model.params[0];
            j["alpha"] = model.params[1];
            break;
        case Family::PowerLaw:
            j["xmin"] = model.params[0];
            j["alpha"] = model.params[1];
            break;
        case Family::Weibull:
            j["k"] = model.params[0];
            j["lambda"] = model.params[1];
            j["theta"] = model.params[2];
            break;
    }
    return j;
}

inline nlohmann::json family_entry_json(const FitResult& fit) {
    nlohmann::json j;
    j["family"] = std::string(family_name(fit.model.family));
    if (!fit.model.params.empty()) j["params"] = params_json(fit.model);
    j["r_square"] = fit.r_square;
    j["pearson_r"] = fit.pearson_r;
    j["converged"] = fit.converged;
    j["theta"] = fit.theta_selected;
    if (!fit.note.empty()) j["note"] = fit.note;
    if (!fit.error.empty()) j["error"] = fit.error;
    return j;
}

inline nlohmann::json stats_json(const SummaryStats& stats) {
    return {{"mean", stats.mean}, {"median", stats.median}, {"p90", stats.p90}, {"p95", stats.p95}};
}

}  // namespace detail

inline nlohmann::json report_to_json(const AnalysisReport& report) {
    nlohmann::json j;
    nlohmann::json inputs = nlohmann::json::array();
    for (const InputFileInfo& f : report.inputs) inputs.push_back({{"path", f.path}, {"fnv1a64", f.fnv1a64}});
    j["meta"] = {{"version", report.tool_version},
                 {"generated_at", report.generated_at},
                 {"inputs", inputs},
                 {"record_count", report.record_count}};
    j["stats"] = detail::stats_json(report.stats);

    nlohmann::json model;
    model["family"] = std::string(family_name(report.model.model.family));
    if (!report.model.model.params.empty()) model.update(detail::params_json(report.model.model));
    model["converged"] = report.model.converged;
    j["model"] = model;

    j["fit"] = {{"r_square", report.model.r_square},
                {"pearson_r", report.model.pearson_r},
                {"truncation_percentile", report.truncation_percentile},
                {"theta_grid",
                 {{"start", report.theta_grid.start}, {"stop", report.theta_grid.stop}, {"step", report.theta_grid.step}}}};

    nlohmann::json families = nlohmann::json::array();
    for (const FitResult& fit : report.families) families.push_back(detail::family_entry_json(fit));
    j["families"] = families;

    if (report.cohorts) {
        nlohmann::json cohorts;
        for (const CohortClassResult& entry : report.cohorts->classes) {
            nlohmann::json c;
            c["commits"] = entry.commit_count;
            c["stats"] = detail::stats_json(entry.stats);
            c["model"] = detail::family_entry_json(entry.fit);
            cohorts[std::string(size_class_name(entry.cls))] = c;
        }
        nlohmann::json deltas = nlohmann::json::array();
        for (const CohortDelta& d : report.cohorts->deltas)
            deltas.push_back({{"threshold", d.threshold},
                              {"pair", std::string(size_class_name(d.upper)) + "-" + std::string(size_class_name(d.lower))},
                              {"delta", d.delta}});
        cohorts["deltas"] = deltas;
        cohorts["warnings"] = report.cohorts->warnings;
        j["cohorts"] = cohorts;
    }

    j["seeds"] = report.seeds;
    return j;
}

/// Plot-ready point series: empirical CDF, fitted CDF on the half-integer
/// grid, EPDF masses, and P-P points, truncated at the given percentile.
struct PlotSeries {
    std::vector<std::pair<double, double>> empirical_cdf;
    std::vector<std::pair<double, double>> model_cdf;
    std::vector<std::pair<double, double>> epdf;
    std::vector<std::pair<double, double>> pp;
};

inline PlotSeries plot_series(const Ecdf& ecdf, const FamilyModel& model, double truncation_percentile = 95.0) {
    PlotSeries series;
    double cut = ecdf.sample_quantile(truncation_percentile);

    double prev_prob = 0.0;
    for (const EcdfPoint& p : ecdf.points()) {
        double mass = p.cumulative_prob - prev_prob;
        prev_prob = p.cumulative_prob;
        if (p.size.value() > cut) continue;
        series.empirical_cdf.emplace_back(p.size.value(), p.cumulative_prob);
        series.epdf.emplace_back(p.size.value(), mass);
    }

    double start = family_support_start(model);
    series.model_cdf.emplace_back(start, family_cdf(start, model));
    for (std::int64_t t = static_cast<std::int64_t>(std::floor(2.0 * start)) + 1;
         static_cast<double>(t) / 2.0 <= cut; ++t)
        series.model_cdf.emplace_back(static_cast<double>(t) / 2.0,
                                      family_cdf(static_cast<double>(t) / 2.0, model));

    std::vector<std::pair<double, double>> pp = pp_points(ecdf, model);
    for (std::size_t i = 0; i < pp.size(); ++i)
        if (ecdf.points()[i].size.value() <= cut) series.pp.push_back(pp[i]);
    return series;
}

namespace detail {

inline std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

inline void write_xy_csv(const std::filesystem::path& path, std::span<const std::pair<double, double>> points) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << "x,y\n";
    for (auto& [x, y] : points) out << format_double(x) << ',' << format_double(y) << '\n';
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace detail

enum class ReportFormat { Json, CsvBundle };

/// Writes report.json and/or the CSV bundle (ecdf.csv, model_cdf.csv, pp.csv,
/// epdf.csv, cohorts.csv) into out_dir; returns the paths written.
inline std::vector<std::filesystem::path> emit_report(const AnalysisReport& report,
                                                      const std::optional<PlotSeries>& series, ReportFormat format,
                                                      const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;

    if (format == ReportFormat::Json) {
        std::filesystem::path path = out_dir / "report.json";
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
        out << report_to_json(report).dump(2) << '\n';
        if (!out) throw IoError("write failed for '" + path.string() + "'");
        written.push_back(path);
        return written;
    }

    if (!series) throw std::invalid_argument("emit_report: csv bundle requires plot series");
    detail::write_xy_csv(out_dir / "ecdf.csv", series->empirical_cdf);
    detail::write_xy_csv(out_dir / "model_cdf.csv", series->model_cdf);
    detail::write_xy_csv(out_dir / "pp.csv", series->pp);
    detail::write_xy_csv(out_dir / "epdf.csv", series->epdf);
    written.push_back(out_dir / "ecdf.csv");
    written.push_back(out_dir / "model_cdf.csv");
    written.push_back(out_dir / "pp.csv");
    written.push_back(out_dir / "epdf.csv");

    std::filesystem::path cohorts_path = out_dir / "cohorts.csv";
    std::ofstream out(cohorts_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + cohorts_path.string() + "' for writing");
    out << "class,commits,xi,theta,sigma,r_square,pearson_r,mean,median,p90,p95\n";
    if (report.cohorts) {
        for (const CohortClassResult& entry : report.cohorts->classes) {
            const std::vector<double>& p = entry.fit.model.params;
            out << size_class_name(entry.cls) << ',' << entry.commit_count << ',' << detail::format_double(p[0]) << ','
                << detail::format_double(p[1]) << ',' << detail::format_double(p[2]) << ','
                << detail::format_double(entry.fit.r_square) << ',' << detail::format_double(entry.fit.pearson_r) << ','
                << detail::format_double(entry.stats.mean) << ',' << detail::format_double(entry.stats.median) << ','
                << detail::format_double(entry.stats.p90) << ',' << detail::format_double(entry.stats.p95) << '\n';
        }
    }
    if (!out) throw IoError("write failed for '" + cohorts_path.string() + "'");
    written.push_back(cohorts_path);
    return written;
}

/// Minimal static line chart; one polyline per series, linear axes.
inline void write_svg_chart(const std::filesystem::path& path, std::string_view title,
                            std::span<const std::pair<std::string, std::vector<std::pair<double, double>>>> series) {
    constexpr double kWidth = 640.0, kHeight = 480.0, kMargin = 48.0;
    double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;
    bool first = true;
    for (auto& [label, points] : series) {
        (void)label;
        for (auto& [x, y] : points) {
            if (first) {
                min_x = max_x = x;
                min_y = max_y = y;
                first = false;
            }
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
    }
    if (max_x == min_x) max_x = min_x + 1.0;
    if (max_y == min_y) max_y = min_y + 1.0;

    auto sx = [&](double x) { return kMargin + (x - min_x) / (max_x - min_x) * (kWidth - 2 * kMargin); };
    auto sy = [&](double y) { return kHeight - kMargin - (y - min_y) / (max_y - min_y) * (kHeight - 2 * kMargin); };

    static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\">" << title
        << "</text>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
        << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
        << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\" font-family=\"sans-serif\" font-size=\"10\">"
        << detail::format_double(min_x) << "</text>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << detail::format_double(max_x)
        << "</text>\n";
    std::size_t color = 0;
    for (auto& [label, points] : series) {
        out << "<polyline fill=\"none\" stroke=\"" << kColors[color % 4] << "\" points=\"";
        for (auto& [x, y] : points) out << sx(x) << ',' << sy(y) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin + 14.0 * static_cast<double>(color)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << kColors[color % 4]
            << "\">" << label << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace commitdist
