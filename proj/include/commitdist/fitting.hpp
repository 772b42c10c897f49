// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "commitdist/ecdf.hpp"
#include "commitdist/families.hpp"
#include "commitdist/nlls.hpp"

namespace commitdist {

// Distribution parameters are estimated by least squares against the ECDF:
// minimize sum_i (F(x_i) - ECDF(x_i))^2 with one unweighted term per unique
// size. The GPD location is not part of the optimization; it is chosen by a
// grid search that refits (shape, scale) at each candidate and keeps the
// location whose fitted CDF is closest to the ECDF at the mode size of 1.

struct ThetaGrid {
    double start = 0.0;
    double stop = 5.0;
    double step = 0.5;

    std::vector<double> values() const {
        if (!(step > 0.0)) throw std::domain_error("theta grid: step must be positive");
        std::vector<double> out;
        auto count = static_cast<std::size_t>((stop - start) / step + 1e-9);
        for (std::size_t k = 0; k <= count; ++k) out.push_back(start + static_cast<double>(k) * step);
        return out;
    }
};

struct FitConfig {
    ThetaGrid theta_grid{};
    double truncation_percentile = 95.0;
    std::vector<Family> families{kAllFamilies, kAllFamilies + 5};
    LmOptions solver{};
    bool weight_per_sample = false;  // weight each term by its sample count
    bool truncate_fit = false;       // restrict the fit itself to the truncated range
    double ranking_tie_epsilon = 1e-4;
};

struct FitResult {
    FamilyModel model;
    double r_square = 0.0;
    double pearson_r = 0.0;
    std::vector<std::pair<HalfLoc, double>> residuals;  // (size, model cdf - ecdf)
    double truncation_percentile = 95.0;
    double theta_selected = 0.0;
    bool converged = false;
    double sse = 0.0;
    int iterations = 0;
    std::string note;   // e.g. tie against a nested simpler family
    std::string error;  // set on per-family failures in a ranking
};

/// Fit failure; carries the best iterate reached before giving up.
class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, FitResult best) : std::runtime_error(what), best_(std::move(best)) {}
    const FitResult& best() const { return best_; }

private:
    FitResult best_;
};

namespace detail {

struct EcdfView {
    std::vector<double> x;
    std::vector<double> e;
    std::vector<double> w;  // sqrt-weights; empty when unweighted
};

inline EcdfView make_view(const Ecdf& ecdf, const FitConfig& cfg) {
    EcdfView view;
    double cut = cfg.truncate_fit ? ecdf.sample_quantile(cfg.truncation_percentile)
                                  : std::numeric_limits<double>::infinity();
    double prev_prob = 0.0;
    for (const EcdfPoint& p : ecdf.points()) {
        if (p.size.value() > cut) break;
        view.x.push_back(p.size.value());
        view.e.push_back(p.cumulative_prob);
        if (cfg.weight_per_sample) view.w.push_back(std::sqrt(p.cumulative_prob - prev_prob));
        prev_prob = p.cumulative_prob;
    }
    return view;
}

struct FamilySpec {
    std::vector<double> init;
    std::function<FamilyModel(const std::vector<double>&)> to_model;
};

// Unconstrained reparameterizations per family; positives run through exp,
// the power-law exponent through 1 + exp.
inline FamilySpec family_spec(Family family, double theta, const Ecdf& ecdf) {
    double median = ecdf.sample_quantile(50.0);
    double min_size = ecdf.min_size().value();
    switch (family) {
        case Family::Gpd:
            return {{1.0, std::log(std::max(median, 1e-6))}, [theta](const std::vector<double>& u) {
                        return FamilyModel::gpd({u[0], theta, std::exp(u[1])});
                    }};
        case Family::Exponential: {
            double rate = std::log(2.0) / std::max(median - theta, 1e-6);
            return {{std::log(rate)}, [theta](const std::vector<double>& u) {
                        return FamilyModel{Family::Exponential, {std::exp(u[0]), theta}};
                    }};
        }
        case Family::Pareto:
            return {{std::log(min_size), 0.0}, [](const std::vector<double>& u) {
                        return FamilyModel{Family::Pareto, {std::exp(u[0]), std::exp(u[1])}};
                    }};
        case Family::PowerLaw:
            return {{0.0}, [min_size](const std::vector<double>& u) {
                        return FamilyModel{Family::PowerLaw, {min_size, 1.0 + std::exp(u[0])}};
                    }};
        case Family::Weibull: {
            double spread = std::max(median - theta, 1e-6);
            return {{0.0, std::log(spread)}, [theta](const std::vector<double>& u) {
                        return FamilyModel{Family::Weibull, {std::exp(u[0]), std::exp(u[1]), theta}};
                    }};
        }
    }
    throw std::domain_error("unknown family");
}

inline double pearson(std::span<const double> a, std::span<const double> b) {
    const auto n = static_cast<double>(a.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double da = a[i] - mean_a;
        double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a <= 0.0 || var_b <= 0.0) return 0.0;
    return cov / std::sqrt(var_a * var_b);
}

}  // namespace detail

/// R-square and Pearson's R of a model CDF against the ECDF, restricted to
/// sizes at or below the given sample percentile.
inline std::pair<double, double> goodness_of_fit(const Ecdf& ecdf, const std::function<double(double)>& model_cdf,
                                                 double truncation_percentile) {
    double cut = ecdf.sample_quantile(truncation_percentile);
    std::vector<double> f;
    std::vector<double> e;
    for (const EcdfPoint& p : ecdf.points()) {
        if (p.size.value() > cut) break;
        f.push_back(model_cdf(p.size.value()));
        e.push_back(p.cumulative_prob);
    }
    if (f.size() < 3) throw std::invalid_argument("goodness_of_fit: fewer than 3 points after truncation");

    double mean_e = 0.0;
    for (double v : e) mean_e += v;
    mean_e /= static_cast<double>(e.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        ss_res += (f[i] - e[i]) * (f[i] - e[i]);
        ss_tot += (e[i] - mean_e) * (e[i] - mean_e);
    }
    double r_square = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
    return {r_square, detail::pearson(f, e)};
}

inline std::pair<double, double> goodness_of_fit(const Ecdf& ecdf, const FamilyModel& model,
                                                 double truncation_percentile) {
    return goodness_of_fit(
        ecdf, [&model](double x) { return family_cdf(x, model); }, truncation_percentile);
}

/// Least-squares fit of one family to the ECDF. The GPD location must be
/// supplied (see select_location); exponential and Weibull use the supplied
/// location or 0.
inline FitResult fit_lsq(const Ecdf& ecdf, Family family, std::optional<double> fixed_theta, const FitConfig& cfg) {
    if (ecdf.points().size() < 2) throw std::invalid_argument("fit_lsq: degenerate ecdf (fewer than 2 unique sizes)");
    if (family == Family::Gpd && !fixed_theta)
        throw std::invalid_argument("fit_lsq: gpd requires a fixed location (run select_location first)");

    detail::EcdfView view = detail::make_view(ecdf, cfg);
    if (view.x.size() < 2) throw std::invalid_argument("fit_lsq: fewer than 2 points in fitting range");
    double theta = fixed_theta.value_or(0.0);
    detail::FamilySpec spec = detail::family_spec(family, theta, ecdf);

    auto residual_fn = [&](const std::vector<double>& u, std::vector<double>& out) {
        FamilyModel model = spec.to_model(u);
        out.resize(view.x.size());
        for (std::size_t i = 0; i < view.x.size(); ++i) {
            double r = family_cdf(view.x[i], model) - view.e[i];
            out[i] = view.w.empty() ? r : r * view.w[i];
        }
    };

    LmResult lm = levenberg_marquardt(residual_fn, spec.init, cfg.solver);

    FitResult result;
    result.model = spec.to_model(lm.params);
    result.truncation_percentile = cfg.truncation_percentile;
    result.theta_selected = theta;
    result.converged = lm.converged;
    result.sse = lm.sse;
    result.iterations = lm.iterations;
    for (const EcdfPoint& p : ecdf.points())
        result.residuals.emplace_back(p.size, family_cdf(p.size.value(), result.model) - p.cumulative_prob);
    if (!lm.converged)
        throw FitError("fit_lsq: " + std::string(family_name(family)) + " did not converge within " +
                           std::to_string(cfg.solver.max_iterations) + " iterations",
                       std::move(result));
    auto [r2, pr] = goodness_of_fit(ecdf, result.model, cfg.truncation_percentile);
    result.r_square = r2;
    result.pearson_r = pr;
    return result;
}

namespace detail {

/// Smallest-criterion candidate; ties go to the smaller theta. Candidates
/// arrive in ascending theta order.
inline double pick_min_theta(std::span<const std::pair<double, double>> candidates) {
    if (candidates.empty()) throw std::invalid_argument("pick_min_theta: no candidates");
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
        if (candidates[i].second < candidates[best].second) best = i;
    return candidates[best].first;
}

}  // namespace detail

/// Grid search for the GPD location: refit (shape, scale) at each candidate
/// and keep the location minimizing |F(1) - ECDF(1)| (nearest ECDF point when
/// size 1 is absent).
inline double select_location(const Ecdf& ecdf, const FitConfig& cfg) {
    std::size_t mode_index = ecdf.index_of_nearest(HalfLoc::from_int(1));
    double mode_x = ecdf.points()[mode_index].size.value();
    double mode_e = ecdf.points()[mode_index].cumulative_prob;

    std::vector<std::pair<double, double>> candidates;
    for (double theta : cfg.theta_grid.values()) {
        try {
            FitResult fit = fit_lsq(ecdf, Family::Gpd, theta, cfg);
            double criterion = std::abs(family_cdf(mode_x, fit.model) - mode_e);
            candidates.emplace_back(theta, criterion);
        } catch (const FitError&) {
            // candidate skipped; the grid may still produce a winner
        }
    }
    if (candidates.empty())
        throw FitError("select_location: no location candidate produced a convergent fit", FitResult{});
    return detail::pick_min_theta(candidates);
}

/// P-P diagnostic points: (model percentile, empirical percentile) at every
/// ECDF size.
inline std::vector<std::pair<double, double>> pp_points(const Ecdf& ecdf, const FamilyModel& model) {
    std::vector<std::pair<double, double>> points;
    points.reserve(ecdf.points().size());
    for (const EcdfPoint& p : ecdf.points()) points.emplace_back(family_cdf(p.size.value(), model), p.cumulative_prob);
    return points;
}

/// Fits every configured family and ranks by R-square (descending).
/// Individual failures become entries with an error note instead of aborting
/// the ranking. Near-ties where one family nests the other are annotated.
inline std::vector<FitResult> compare_families(const Ecdf& ecdf, const FitConfig& cfg) {
    std::vector<FitResult> results;
    if (cfg.families.empty()) return results;

    std::optional<double> gpd_theta;
    bool wants_gpd = std::find(cfg.families.begin(), cfg.families.end(), Family::Gpd) != cfg.families.end();
    if (wants_gpd) {
        try {
            gpd_theta = select_location(ecdf, cfg);
        } catch (const FitError& e) {
            FitResult failed = e.best();
            failed.model.family = Family::Gpd;
            failed.error = e.what();
            results.push_back(std::move(failed));
        }
    }

    for (Family family : cfg.families) {
        if (family == Family::Gpd && !gpd_theta) continue;  // failure entry already recorded
        std::optional<double> theta;
        if (family == Family::Gpd || family == Family::Exponential || family == Family::Weibull) theta = gpd_theta;
        try {
            results.push_back(fit_lsq(ecdf, family, theta, cfg));
        } catch (const FitError& e) {
            FitResult failed = e.best();
            failed.error = e.what();
            results.push_back(std::move(failed));
        } catch (const std::exception& e) {
            FitResult failed;
            failed.model.family = family;
            failed.error = e.what();
            results.push_back(std::move(failed));
        }
    }

    std::stable_sort(results.begin(), results.end(), [](const FitResult& a, const FitResult& b) {
        bool a_ok = a.error.empty();
        bool b_ok = b.error.empty();
        if (a_ok != b_ok) return a_ok;
        return a.r_square > b.r_square;
    });

    // nesting relations: a near-tie means the data does not justify the
    // richer family
    auto nests = [](Family outer, Family inner) {
        if (outer == Family::Gpd) return inner == Family::Exponential || inner == Family::Pareto;
        if (outer == Family::Weibull) return inner == Family::Exponential;
        return false;
    };
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!results[i].error.empty()) continue;
        for (std::size_t j = 0; j < results.size(); ++j) {
            if (i == j || !results[j].error.empty()) continue;
            if (!nests(results[i].model.family, results[j].model.family)) continue;
            if (std::abs(results[i].r_square - results[j].r_square) <= cfg.ranking_tie_epsilon)
                results[i].note = "statistically tied with simpler family '" +
                                  std::string(family_name(results[j].model.family)) + "'";
        }
    }
    return results;
}

}  // namespace commitdist
