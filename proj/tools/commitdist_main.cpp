// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commitdist/commitdist.hpp"

namespace fs = std::filesystem;
using namespace commitdist;

namespace {

// exit codes: 0 success, 1 analysis failure, 2 input/output error
constexpr int kExitAnalysis = 1;
constexpr int kExitInput = 2;

int g_verbosity = 0;

void log_note(const std::string& message) {
    if (g_verbosity > 0) std::cerr << "commitdist: " << message << '\n';
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool looks_like_numstat(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        if (!is_blank_line(line)) return line.starts_with("commit ");
    }
    return true;  // empty input parses as an empty numstat log
}

struct FitFlags {
    std::string theta_grid_spec;
    double truncation_pct = 95.0;
    std::vector<std::string> family_names;
    std::optional<double> fixed_theta;
    bool weight_per_sample = false;
    bool truncate_fit = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--theta-grid", theta_grid_spec, "Location grid as start:stop:step (default 0:5:0.5)");
        cmd->add_option("--truncation-pct", truncation_pct, "Percentile cut for goodness-of-fit and plots")
            ->check(CLI::Range(1.0, 100.0));
        cmd->add_option("--families", family_names,
                        "Families to fit (gpd, exponential, pareto, powerlaw, weibull)")
            ->delimiter(',');
        cmd->add_option("--theta", fixed_theta, "Fix the GPD location instead of grid searching");
        cmd->add_flag("--weight-per-sample", weight_per_sample, "Weight least-squares terms by sample count");
        cmd->add_flag("--truncate-fit", truncate_fit, "Restrict the fit itself to the truncated range");
    }

    FitConfig to_config() const {
        FitConfig cfg;
        if (!theta_grid_spec.empty()) {
            double start = 0, stop = 0, step = 0;
            char c1 = 0, c2 = 0;
            std::istringstream in(theta_grid_spec);
            if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
                throw std::invalid_argument("bad --theta-grid '" + theta_grid_spec + "', expected start:stop:step");
            cfg.theta_grid = {start, stop, step};
        }
        cfg.truncation_percentile = truncation_pct;
        cfg.weight_per_sample = weight_per_sample;
        cfg.truncate_fit = truncate_fit;
        if (!family_names.empty()) {
            cfg.families.clear();
            for (const std::string& name : family_names) {
                std::optional<Family> family = family_from_name(name);
                if (!family) throw std::invalid_argument("unknown family '" + name + "'");
                cfg.families.push_back(*family);
            }
        }
        return cfg;
    }
};

std::vector<HalfLoc> positive_sizes(const std::vector<CommitStats>& records) {
    std::vector<HalfLoc> sizes;
    sizes.reserve(records.size());
    for (const CommitStats& r : records)
        if (r.size.twice() > 0) sizes.push_back(r.size);
    return sizes;
}

AnalysisReport base_report(const std::vector<fs::path>& inputs, std::size_t record_count, const FitConfig& cfg) {
    AnalysisReport report;
    report.generated_at = utc_timestamp_now();
    for (const fs::path& path : inputs) report.inputs.push_back({path.string(), fnv1a64_hex_of_file(path)});
    report.record_count = record_count;
    report.theta_grid = cfg.theta_grid;
    report.truncation_percentile = cfg.truncation_percentile;
    return report;
}

// ---------------------------------------------------------------- scan ----

struct ScanArgs {
    std::vector<std::string> inputs;
    std::string out;
    std::string project_id;
    bool skip_empty = false;
    bool count_blank_lines = false;
};

int run_scan(const ScanArgs& args) {
    std::vector<CommitStats> records;
    try {
        std::set<std::string> used_ids;
        for (const std::string& input : args.inputs) {
            std::string text = read_file(input);
            std::vector<RawCommit> commits;
            if (looks_like_numstat(text)) {
                commits = parse_numstat_log(text);
            } else {
                RawCommit commit;
                commit.commit_id = fs::path(input).stem().string();
                commit.timestamp = 1;
                commit.deltas = parse_unified_diff(text);
                commits.push_back(std::move(commit));
            }
            log_note("parsed " + std::to_string(commits.size()) + " commits from '" + input + "'");
            for (RawCommit& commit : commits) {
                if (args.skip_empty && commit.deltas.empty()) continue;
                std::string id = commit.commit_id;
                for (int suffix = 2; !used_ids.insert(id).second; ++suffix)
                    id = commit.commit_id + "-" + std::to_string(suffix);
                commit.commit_id = id;
                CommitStats stats = make_commit_stats(commit, args.count_blank_lines);
                if (!args.project_id.empty()) stats.project_id = args.project_id;
                records.push_back(std::move(stats));
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "commitdist scan: " << e.what() << '\n';
        return kExitInput;
    }

    std::stable_sort(records.begin(), records.end(), [](const CommitStats& a, const CommitStats& b) {
        return std::tie(a.timestamp, a.commit_id) < std::tie(b.timestamp, b.commit_id);
    });

    try {
        store_commit_stats(records, fs::path(args.out));
    } catch (const std::exception& e) {
        std::cerr << "commitdist scan: " << e.what() << '\n';
        return kExitInput;
    }
    log_note("wrote " + std::to_string(records.size()) + " rows to '" + args.out + "'");
    return 0;
}

// ----------------------------------------------------------- fit/report ----

struct FitArgs {
    std::string input;
    std::string out = ".";
    std::string format = "json";
    FitFlags flags;
    bool with_bundle = false;  // report subcommand: always emit series + svg
};

int run_fit(const FitArgs& args) {
    FitConfig cfg;
    std::vector<CommitStats> records;
    try {
        cfg = args.flags.to_config();
        records = load_commit_stats(fs::path(args.input));
    } catch (const std::exception& e) {
        std::cerr << "commitdist fit: " << e.what() << '\n';
        return kExitInput;
    }

    AnalysisReport report;
    std::optional<PlotSeries> series;
    try {
        std::vector<HalfLoc> sizes = positive_sizes(records);
        if (sizes.empty()) throw std::invalid_argument("no commits with positive size in '" + args.input + "'");
        Ecdf ecdf = build_ecdf(sizes);

        if (args.flags.fixed_theta) {
            // bypass the grid: fit every family at the fixed location
            FitConfig fixed = cfg;
            fixed.theta_grid = {*args.flags.fixed_theta, *args.flags.fixed_theta, 0.5};
            cfg = fixed;
        }

        report = base_report({fs::path(args.input)}, records.size(), cfg);
        report.stats = descriptive_stats(sizes);
        report.families = compare_families(ecdf, cfg);

        auto best = std::find_if(report.families.begin(), report.families.end(),
                                 [](const FitResult& f) { return f.error.empty(); });
        if (best == report.families.end()) throw FitError("no family produced a usable fit", FitResult{});
        report.model = *best;
        series = plot_series(ecdf, report.model.model, cfg.truncation_percentile);
    } catch (const std::exception& e) {
        std::cerr << "commitdist fit: " << e.what() << '\n';
        return kExitAnalysis;
    }

    try {
        fs::path out_dir(args.out);
        emit_report(report, series, ReportFormat::Json, out_dir);
        if (args.format == "csv" || args.with_bundle) emit_report(report, series, ReportFormat::CsvBundle, out_dir);
        if (args.with_bundle) {
            using Series = std::pair<std::string, std::vector<std::pair<double, double>>>;
            std::vector<Series> cdf = {{"empirical", series->empirical_cdf}, {"model", series->model_cdf}};
            std::vector<Series> epdf_series = {{"epdf", series->epdf}};
            std::vector<Series> pp = {{"p-p", series->pp},
                                      {"diagonal", {{0.0, 0.0}, {1.0, 1.0}}}};
            write_svg_chart(out_dir / "cdf.svg", "Commit size CDF", cdf);
            write_svg_chart(out_dir / "epdf.svg", "Commit size EPDF", epdf_series);
            write_svg_chart(out_dir / "pp.svg", "P-P plot", pp);
        }
    } catch (const std::exception& e) {
        std::cerr << "commitdist fit: " << e.what() << '\n';
        return kExitInput;
    }
    log_note("fit complete: " + std::string(family_name(report.model.model.family)) +
             " r_square=" + std::to_string(report.model.r_square));
    return 0;
}

// -------------------------------------------------------------- cohorts ----

struct CohortsArgs {
    std::string input;
    std::string projects;
    std::string out = ".";
    std::string format = "json";
    std::vector<double> thresholds = {13.0};
    std::size_t min_class_commits = 1000;
    FitFlags flags;
};

std::vector<ProjectMeta> load_project_meta(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError(1, "missing project metadata header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "project_id,developer_count")
        throw ParseError(line_no, "expected header 'project_id,developer_count', got '" + line + "'");
    std::vector<ProjectMeta> meta;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos) throw ParseError(line_no, "expected 'project_id,developer_count'");
        ProjectMeta m;
        m.project_id = line.substr(0, comma);
        if (!detail::parse_i64(line.substr(comma + 1), m.developer_count) || m.developer_count < 1)
            throw ParseError(line_no, "bad developer count '" + line.substr(comma + 1) + "'");
        meta.push_back(std::move(m));
    }
    return meta;
}

int run_cohorts(const CohortsArgs& args) {
    FitConfig cfg;
    std::vector<CommitStats> records;
    std::map<std::string, std::int64_t> developers;
    try {
        cfg = args.flags.to_config();
        records = load_commit_stats(fs::path(args.input));
        for (ProjectMeta& m : load_project_meta(fs::path(args.projects)))
            developers[m.project_id] = m.developer_count;
    } catch (const std::exception& e) {
        std::cerr << "commitdist cohorts: " << e.what() << '\n';
        return kExitInput;
    }

    AnalysisReport report;
    std::optional<PlotSeries> series;
    try {
        std::map<SizeClass, std::vector<HalfLoc>> by_class;
        std::set<std::string> missing;
        std::vector<HalfLoc> all_sizes;
        for (const CommitStats& r : records) {
            if (r.size.twice() <= 0) continue;
            if (!r.project_id) {
                missing.insert("<none>");
                continue;
            }
            auto it = developers.find(*r.project_id);
            if (it == developers.end()) {
                missing.insert(*r.project_id);
                continue;
            }
            by_class[size_class(it->second)].push_back(r.size);
            all_sizes.push_back(r.size);
        }
        if (all_sizes.empty()) throw std::invalid_argument("no commits matched the project metadata");

        report = base_report({fs::path(args.input), fs::path(args.projects)}, records.size(), cfg);
        report.stats = descriptive_stats(all_sizes);
        CohortReport cohorts = cohort_fit(by_class, cfg, args.thresholds, args.min_class_commits);
        for (const std::string& id : missing) {
            cohorts.warnings.push_back("project '" + id + "' excluded: no metadata");
            std::cerr << "commitdist cohorts: warning: project '" << id << "' excluded (no metadata)\n";
        }
        report.cohorts = std::move(cohorts);

        // overall fit over all classified commits, for the model section
        Ecdf ecdf = build_ecdf(all_sizes);
        FitConfig overall = cfg;
        overall.families = {Family::Gpd};
        report.families = compare_families(ecdf, overall);
        if (!report.families.empty() && report.families.front().error.empty()) {
            report.model = report.families.front();
            series = plot_series(ecdf, report.model.model, cfg.truncation_percentile);
        }
    } catch (const std::exception& e) {
        std::cerr << "commitdist cohorts: " << e.what() << '\n';
        return kExitAnalysis;
    }

    try {
        emit_report(report, series, ReportFormat::Json, fs::path(args.out));
        if (args.format == "csv" && series) emit_report(report, series, ReportFormat::CsvBundle, fs::path(args.out));
    } catch (const std::exception& e) {
        std::cerr << "commitdist cohorts: " << e.what() << '\n';
        return kExitInput;
    }
    return 0;
}

// ------------------------------------------------------------- activity ----

struct ActivityArgs {
    std::string input;
    std::string as_of;
    std::string out;
};

int run_activity(const ActivityArgs& args) {
    std::vector<CommitStats> records;
    std::chrono::year_month_day as_of{};
    try {
        as_of = parse_date(args.as_of);
        records = load_commit_stats(fs::path(args.input));
    } catch (const std::exception& e) {
        std::cerr << "commitdist activity: " << e.what() << '\n';
        return kExitInput;
    }

    std::map<std::string, std::vector<std::int64_t>> timestamps;
    for (const CommitStats& r : records) {
        if (!r.project_id) {
            std::cerr << "commitdist activity: warning: commit '" << r.commit_id << "' has no project_id, skipped\n";
            continue;
        }
        timestamps[*r.project_id].push_back(r.timestamp);
    }

    std::ostringstream out;
    out << "project_id,active,vacuous,recent_commits,prior_commits\n";
    for (auto& [project, times] : timestamps) {
        std::vector<std::int64_t> counts = monthly_commit_counts(times, as_of);
        ActivityResult result = is_active(counts);
        out << project << ',' << (result.active ? "true" : "false") << ',' << (result.vacuous ? "true" : "false") << ','
            << result.recent_commits << ',' << result.prior_commits << '\n';
    }

    try {
        if (args.out.empty()) {
            std::cout << out.str();
        } else {
            std::ofstream file(args.out, std::ios::binary | std::ios::trunc);
            if (!file) throw IoError("cannot open '" + args.out + "' for writing");
            file << out.str();
        }
    } catch (const std::exception& e) {
        std::cerr << "commitdist activity: " << e.what() << '\n';
        return kExitInput;
    }
    return 0;
}

// ---------------------------------------------------------------- synth ----

struct SynthArgs {
    std::string out;
    std::uint64_t n = 0;
    double xi = 1.4617;
    double theta = 0.5;
    double sigma = 13.854;
    std::uint64_t seed = 1;
    std::string project_id;
    std::int64_t start_timestamp = 1000000000;
    std::int64_t step_seconds = 60;
};

int run_synth(const SynthArgs& args) {
    GpdParams params{args.xi, args.theta, args.sigma};
    try {
        params.validate();
    } catch (const std::exception& e) {
        std::cerr << "commitdist synth: " << e.what() << '\n';
        return kExitInput;
    }

    std::vector<CommitStats> records;
    try {
        UniformRng rng(args.seed);
        records.reserve(args.n);
        char id[24];
        for (std::uint64_t i = 0; i < args.n; ++i) {
            double draw = gpd_quantile(rng.next(), params);
            HalfLoc size = ceil_to_half(draw);
            CommitStats r;
            std::snprintf(id, sizeof id, "synth-%08llu", static_cast<unsigned long long>(i));
            r.commit_id = id;
            r.timestamp = args.start_timestamp + static_cast<std::int64_t>(i) * args.step_seconds;
            r.files = 1;
            if (size.integral()) {
                r.added = size.twice() / 2;
                r.removed = 0;
            } else {
                r.added = (size.twice() - 1) / 2;
                r.removed = 1;
            }
            r.size = size;
            if (!args.project_id.empty()) r.project_id = args.project_id;
            records.push_back(std::move(r));
        }
    } catch (const std::exception& e) {
        std::cerr << "commitdist synth: " << e.what() << '\n';
        return kExitAnalysis;
    }

    try {
        store_commit_stats(records, fs::path(args.out));
    } catch (const std::exception& e) {
        std::cerr << "commitdist synth: " << e.what() << '\n';
        return kExitInput;
    }
    log_note("wrote " + std::to_string(records.size()) + " synthetic rows to '" + args.out + "'");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Commit-size measurement and distribution fitting"};
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", g_verbosity, "Verbose progress on stderr");
    app.set_version_flag("--version", std::string(kVersion));

    ScanArgs scan_args;
    CLI::App* scan = app.add_subcommand("scan", "Parse logs or diffs into a commit-stats CSV");
    scan->add_option("--input", scan_args.inputs, "Numstat log or unified diff files")->required()->expected(-1);
    scan->add_option("--out", scan_args.out, "Output commit-stats CSV")->required();
    scan->add_option("--project-id", scan_args.project_id, "Stamp every commit with this project id");
    scan->add_flag("--skip-empty", scan_args.skip_empty,
                   "Drop commits with no file deltas (how merges appear in numstat logs)");
    scan->add_flag("--count-blank-lines", scan_args.count_blank_lines,
                   "Keep blank lines in added/removed counts when line texts are available");

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit", "Fit distribution families to commit sizes");
    fit->add_option("--input", fit_args.input, "Commit-stats CSV")->required();
    fit->add_option("--out", fit_args.out, "Output directory");
    fit->add_option("--format", fit_args.format, "json or csv (csv adds the series bundle)")
        ->check(CLI::IsMember({"json", "csv"}));
    fit_args.flags.attach(fit);

    CohortsArgs cohorts_args;
    CLI::App* cohorts = app.add_subcommand("cohorts", "Per-project-size fits and comparisons");
    cohorts->add_option("--input", cohorts_args.input, "Commit-stats CSV with project_id column")->required();
    cohorts->add_option("--projects", cohorts_args.projects, "Project metadata CSV (project_id,developer_count)")
        ->required();
    cohorts->add_option("--out", cohorts_args.out, "Output directory");
    cohorts->add_option("--format", cohorts_args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cohorts->add_option("--threshold", cohorts_args.thresholds, "Sizes at which to compare cohort CDFs")
        ->delimiter(',');
    cohorts->add_option("--min-class-commits", cohorts_args.min_class_commits,
                        "Minimum commits required to fit a class");
    cohorts_args.flags.attach(cohorts);

    ActivityArgs activity_args;
    CLI::App* activity = app.add_subcommand("activity", "Classify projects as active or inactive");
    activity->add_option("--input", activity_args.input, "Commit-stats CSV with project_id column")->required();
    activity->add_option("--as-of", activity_args.as_of, "Evaluation date, YYYY-MM-DD (UTC)")->required();
    activity->add_option("--out", activity_args.out, "Output CSV (stdout when omitted)");

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "Generate synthetic commit sizes from a fitted model");
    synth->add_option("--out", synth_args.out, "Output commit-stats CSV")->required();
    synth->add_option("--n", synth_args.n, "Number of commits")->required();
    synth->add_option("--xi", synth_args.xi, "GPD shape");
    synth->add_option("--theta", synth_args.theta, "GPD location");
    synth->add_option("--sigma", synth_args.sigma, "GPD scale");
    synth->add_option("--seed", synth_args.seed, "RNG seed");
    synth->add_option("--project-id", synth_args.project_id, "Stamp rows with this project id");
    synth->add_option("--start-timestamp", synth_args.start_timestamp, "Timestamp of the first row");
    synth->add_option("--step-seconds", synth_args.step_seconds, "Timestamp spacing");

    FitArgs report_args;
    report_args.with_bundle = true;
    CLI::App* report = app.add_subcommand("report", "Full report: JSON, CSV series bundle, and SVG charts");
    report->add_option("--input", report_args.input, "Commit-stats CSV")->required();
    report->add_option("--out", report_args.out, "Output directory");
    report_args.flags.attach(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    if (scan->parsed()) return run_scan(scan_args);
    if (fit->parsed()) return run_fit(fit_args);
    if (cohorts->parsed()) return run_cohorts(cohorts_args);
    if (activity->parsed()) return run_activity(activity_args);
    if (synth->parsed()) return run_synth(synth_args);
    if (report->parsed()) {
        report_args.format = "csv";
        return run_fit(report_args);
    }
    return kExitInput;
}
