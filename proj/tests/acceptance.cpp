// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

// End-to-end acceptance suite. Runs every gate criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion; exit status is the
// number of failed criteria. Invoked as:
//   acceptance <path-to-cli> <fixtures-dir>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commitdist/commitdist.hpp"
#include "quadrature.hpp"

namespace fs = std::filesystem;
using namespace commitdist;
using nlohmann::json;

namespace {

std::string g_cli;
fs::path g_fixtures;
fs::path g_workdir;

int run_cli(const std::string& args) {
    std::string command = g_cli + " " + args;
    int status = std::system(command.c_str());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json load_json(const fs::path& path) {
    std::ifstream in(path);
    return json::parse(in);
}

struct Checker {
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void require_close(double actual, double expected, double tol, const std::string& what) {
        if (!(std::abs(actual - expected) <= tol))
            failures.push_back(what + ": got " + std::to_string(actual) + ", want " + std::to_string(expected) +
                               " +/- " + std::to_string(tol));
    }
};

const GpdParams kOverall{1.4617, 0.5, 13.854};
const GpdParams kSmallCohort{1.5969, 0.5, 14.249};
const GpdParams kLargeCohort{1.5708, 0.5, 10.822};

// 1. published median/percentiles are consistent with the published fit
void criterion_1(Checker& c) {
    c.require_close(gpd_cdf(16.0, kOverall), 0.50, 0.02, "F(16) vs median");
    c.require_close(gpd_cdf(261.0, kOverall), 0.90, 0.015, "F(261) vs p90");
    c.require_close(gpd_cdf(604.5, kOverall), 0.95, 0.015, "F(604.5) vs p95");
}

// 2. cohort cdf gap at 13 LoC matches the published 6.03%
void criterion_2(Checker& c) {
    double delta = gpd_cdf(13.0, kLargeCohort) - gpd_cdf(13.0, kSmallCohort);
    c.require_close(delta, 0.0603, 0.001, "F_large(13) - F_small(13)");
}

// 3. closed loop: synth from the published parameters, refit, recover them
// 4. model selection: the gpd outranks every rival family on that corpus
void criteria_3_and_4(Checker& c3, Checker& c4) {
    fs::path stats = g_workdir / "synth_stats.csv";
    fs::path out = g_workdir / "fit_out";
    int rc = run_cli("synth --n 200000 --seed 20080301 --xi 1.4617 --theta 0.5 --sigma 13.854 --out " +
                     stats.string());
    c3.require(rc == 0, "synth exit code " + std::to_string(rc));
    rc = run_cli("fit --input " + stats.string() + " --out " + out.string());
    c3.require(rc == 0, "fit exit code " + std::to_string(rc));
    if (!c3.failures.empty()) {
        c4.require(false, "skipped: closed-loop run failed");
        return;
    }

    json report = load_json(out / "report.json");
    double theta = report["model"]["theta"].get<double>();
    double xi = report["model"]["xi"].get<double>();
    double sigma = report["model"]["sigma"].get<double>();
    c3.require(theta == 0.5, "theta grid search returned " + std::to_string(theta) + ", want exactly 0.5");
    c3.require_close(xi, 1.4617, 0.1, "recovered shape");
    c3.require(std::abs(sigma - 13.854) / 13.854 <= 0.05,
               "recovered scale " + std::to_string(sigma) + " not within 5% of 13.854");
    c3.require(report["fit"]["r_square"].get<double>() >= 0.99,
               "r_square " + std::to_string(report["fit"]["r_square"].get<double>()) + " < 0.99");
    c3.require(report["fit"]["pearson_r"].get<double>() >= 0.995,
               "pearson_r " + std::to_string(report["fit"]["pearson_r"].get<double>()) + " < 0.995");

    const json& families = report["families"];
    c4.require(families.size() == 5, "expected 5 family entries, got " + std::to_string(families.size()));
    c4.require(families[0]["family"] == "gpd", "top-ranked family is not the gpd");
    double gpd_r2 = families[0]["r_square"].get<double>();
    for (std::size_t i = 1; i < families.size(); ++i) {
        std::string name = families[i]["family"].get<std::string>();
        c4.require(families[i].contains("error") == false, "family '" + name + "' failed to fit");
        c4.require(gpd_r2 > families[i]["r_square"].get<double>(), "gpd does not strictly outrank '" + name + "'");
    }
}

// 5. estimator bounds and the exact-matching oracle on synthetic diffs
void criterion_5(Checker& c) {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> dist(0, 12);
    for (int trial = 0; trial < 10000; ++trial) {
        int changed = dist(rng), pure_added = dist(rng), pure_removed = dist(rng);
        std::vector<std::string> removed, added;
        for (int i = 0; i < changed; ++i) {
            std::string base = "line" + std::to_string(trial) + "_" + std::to_string(i) + " body0123456789abcdef";
            removed.push_back(base + "x");
            added.push_back(base + "y");
        }
        for (int i = 0; i < pure_removed; ++i)
            removed.push_back("qdel" + std::to_string(i) + "-qqqqqqqqqqqqqqqqqqqqqqqqqq");
        for (int i = 0; i < pure_added; ++i)
            added.push_back("znew" + std::to_string(i) + "-zzzzzzzzzzzzzzzzzzzzzzzzzz");

        std::int64_t a = changed + pure_added;
        std::int64_t r = changed + pure_removed;
        std::int64_t true_work = a + r - changed;
        if (true_work < lower_bound(a, r) || true_work > upper_bound(a, r)) {
            c.require(false, "true work outside bounds at trial " + std::to_string(trial));
            return;
        }
        double estimate = diff_chunk_size(a, r).value();
        if (std::abs(estimate - static_cast<double>(true_work)) >
            static_cast<double>(std::min(a, r)) / 2.0 + 1e-12) {
            c.require(false, "estimator error beyond min(a,r)/2 at trial " + std::to_string(trial));
            return;
        }
        ChangedLineEstimate oracle = levenshtein_chunk_size(removed, added, 0.4);
        if (oracle.changed != changed || oracle.work != true_work) {
            c.require(false, "oracle missed the construction at trial " + std::to_string(trial) + " (changed " +
                                 std::to_string(oracle.changed) + " vs " + std::to_string(changed) + ")");
            return;
        }
    }
}

// 6. distribution math invariants at their pinned tolerances
void criterion_6(Checker& c) {
    std::vector<FamilyModel> models = {FamilyModel::gpd(kOverall),
                                       {Family::Exponential, {0.25, 0.5}},
                                       {Family::Pareto, {1.0, 2.5}},
                                       {Family::PowerLaw, {1.0, 2.8}},
                                       {Family::Weibull, {1.5, 10.0, 0.5}}};
    for (const FamilyModel& m : models) {
        double lo = family_support_start(m);
        double hi = family_quantile(1.0 - 1e-10, m);
        double mass = testutil::integrate_density([&](double x) { return family_pdf(x, m); }, lo, hi,
                                                  family_quantile(0.5, m) - lo);
        c.require_close(mass, 1.0, 1e-6, std::string("pdf quadrature for ") + std::string(family_name(m.family)));

        double worst_rt = 0.0;
        for (double q = 0.0; q <= 0.999; q += 0.0005)
            worst_rt = std::max(worst_rt, std::abs(family_cdf(family_quantile(q, m), m) - q));
        c.require(worst_rt <= 1e-9, std::string("quantile/cdf round trip for ") +
                                        std::string(family_name(m.family)) + " off by " + std::to_string(worst_rt));
    }

    GpdParams zero{0.0, 0.5, 13.854};
    for (double xi : {1e-6, -1e-6}) {
        GpdParams near{xi, 0.5, 13.854};
        double worst = 0.0;
        for (double x = 0.5; x <= 500.0; x += 0.25)
            worst = std::max(worst, std::abs(gpd_cdf(x, near) - gpd_cdf(x, zero)));
        c.require(worst <= 1e-4, "shape branch discontinuity " + std::to_string(worst));
    }

    const std::size_t n = 100000;
    std::vector<double> sample = gpd_sample(n, kOverall, 1729);
    std::sort(sample.begin(), sample.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = gpd_cdf(sample[i], kOverall);
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / static_cast<double>(n)));
        d = std::max(d, std::abs(f - static_cast<double>(i) / static_cast<double>(n)));
    }
    double critical = 1.6276 / std::sqrt(static_cast<double>(n));
    c.require(d < critical,
              "sampler KS statistic " + std::to_string(d) + " >= 1% critical " + std::to_string(critical));
}

// 7. classification boundaries
void criterion_7(Checker& c) {
    c.require(size_class(1) == SizeClass::Small, "size_class(1)");
    c.require(size_class(5) == SizeClass::Small, "size_class(5)");
    c.require(size_class(6) == SizeClass::Medium, "size_class(6)");
    c.require(size_class(47) == SizeClass::Medium, "size_class(47)");
    c.require(size_class(48) == SizeClass::Large, "size_class(48)");

    std::vector<std::int64_t> counts(24, 0);
    counts[0] = 60;
    counts[12] = 100;
    c.require(is_active(counts).active, "60/100 must be active");
    counts[0] = 59;
    c.require(!is_active(counts).active, "59/100 must be inactive");
}

// 8. golden pipeline: scan matches the checked-in CSV; rerunning fit
//    reproduces identical bytes (timestamp aside)
void criterion_8(Checker& c) {
    fs::path stats = g_workdir / "golden_stats.csv";
    int rc = run_cli("scan --input " + (g_fixtures / "sample.log").string() + " --out " + stats.string());
    c.require(rc == 0, "scan exit code " + std::to_string(rc));
    if (!c.failures.empty()) return;

    std::string produced = slurp(stats);
    std::string golden = slurp(g_fixtures / "sample_stats.csv");
    c.require(produced == golden, "scan output differs from the checked-in golden CSV");

    fs::path out1 = g_workdir / "golden_fit1";
    fs::path out2 = g_workdir / "golden_fit2";
    rc = run_cli("fit --input " + stats.string() + " --out " + out1.string() + " --format csv");
    c.require(rc == 0, "first fit exit code " + std::to_string(rc));
    rc = run_cli("fit --input " + stats.string() + " --out " + out2.string() + " --format csv");
    c.require(rc == 0, "second fit exit code " + std::to_string(rc));
    if (!c.failures.empty()) return;

    json a = load_json(out1 / "report.json");
    json b = load_json(out2 / "report.json");
    a["meta"].erase("generated_at");
    b["meta"].erase("generated_at");
    c.require(a == b, "report.json differs between identical runs");
    for (const char* name : {"ecdf.csv", "model_cdf.csv", "pp.csv", "epdf.csv", "cohorts.csv"})
        c.require(slurp(out1 / name) == slurp(out2 / name), std::string(name) + " differs between identical runs");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <cli-binary> <fixtures-dir>\n";
        return 64;
    }
    g_cli = argv[1];
    g_fixtures = argv[2];
    g_workdir = fs::temp_directory_path() / "commitdist_acceptance";
    fs::remove_all(g_workdir);
    fs::create_directories(g_workdir);

    struct Entry {
        std::string label;
        std::function<void(Checker&)> fn;
    };

    Checker c3, c4;
    criteria_3_and_4(c3, c4);

    std::vector<std::pair<std::string, Checker>> results;
    auto run_one = [&](const std::string& label, const std::function<void(Checker&)>& fn) {
        Checker checker;
        fn(checker);
        results.emplace_back(label, std::move(checker));
    };
    run_one("criterion 1: published quantiles vs model cdf", criterion_1);
    run_one("criterion 2: cohort cdf gap of 6.03% at 13 LoC", criterion_2);
    results.emplace_back("criterion 3: closed-loop parameter recovery", std::move(c3));
    results.emplace_back("criterion 4: gpd outranks rival families", std::move(c4));
    run_one("criterion 5: sizing bounds and matching oracle", criterion_5);
    run_one("criterion 6: distribution math invariants", criterion_6);
    run_one("criterion 7: classification boundaries", criterion_7);
    run_one("criterion 8: golden scan/fit reproducibility", criterion_8);

    int failed = 0;
    for (auto& [label, checker] : results) {
        if (checker.failures.empty()) {
            std::cout << "PASS  " << label << '\n';
        } else {
            ++failed;
            std::cout << "FAIL  " << label << '\n';
            for (const std::string& reason : checker.failures) std::cout << "      - " << reason << '\n';
        }
    }
    return failed;
}
