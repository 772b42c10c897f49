// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "commitdist/families.hpp"
#include "commitdist/gpd.hpp"
#include "quadrature.hpp"

using namespace commitdist;

// Fitted parameters of the overall commit-size model; the reference point
// for most numeric checks here.
static const GpdParams kFitted{1.4617, 0.5, 13.854};

TEST_CASE("gpd pdf closed-form anchors") {
    GpdParams p{0.7, 2.0, 4.0};
    CHECK(gpd_pdf(p.location, p) == Catch::Approx(1.0 / p.scale));

    GpdParams exp_like{0.0, 1.0, 3.0};
    CHECK(gpd_pdf(exp_like.location + exp_like.scale, exp_like) ==
          Catch::Approx(std::exp(-1.0) / exp_like.scale));

    CHECK(gpd_pdf(1.9, p) == 0.0);  // below support

    GpdParams bounded{-0.5, 0.0, 1.0};  // support [0, 2]
    CHECK(gpd_pdf(2.5, bounded) == 0.0);
    CHECK(gpd_cdf(2.5, bounded) == 1.0);
}

TEST_CASE("gpd pdf integrates to one") {
    double upper = gpd_quantile(1.0 - 1e-10, kFitted);
    double integral = testutil::integrate_density([&](double x) { return gpd_pdf(x, kFitted); }, kFitted.location,
                                                  upper, kFitted.scale);
    CHECK(std::abs(integral - 1.0) <= 1e-6);
}

TEST_CASE("family pdfs integrate to one") {
    auto mass = [](const FamilyModel& m, double upper_prob = 1.0 - 1e-10) {
        double lo = family_support_start(m);
        double hi = family_quantile(upper_prob, m);
        return testutil::integrate_density([&](double x) { return family_pdf(x, m); }, lo, hi,
                                           family_quantile(0.5, m) - lo);
    };
    CHECK(std::abs(mass({Family::Exponential, {0.25, 0.5}}) - 1.0) <= 1e-6);
    CHECK(std::abs(mass({Family::Pareto, {1.0, 2.5}}) - 1.0) <= 1e-6);
    CHECK(std::abs(mass({Family::PowerLaw, {1.0, 2.8}}) - 1.0) <= 1e-6);
    CHECK(std::abs(mass({Family::Weibull, {1.5, 10.0, 0.5}}) - 1.0) <= 1e-6);
    CHECK(std::abs(mass(FamilyModel::gpd(kFitted)) - 1.0) <= 1e-6);
}

TEST_CASE("gpd cdf closed-form anchors") {
    CHECK(gpd_cdf(kFitted.location, kFitted) == 0.0);
    CHECK(gpd_cdf(kFitted.location - 5.0, kFitted) == 0.0);

    // median/p90/p95 consistency of the fitted model with its source sample
    CHECK(gpd_cdf(16.0, kFitted) == Catch::Approx(0.48466681754229910).epsilon(1e-12));
    CHECK(std::abs(gpd_cdf(16.0, kFitted) - 0.50) <= 0.02);
    CHECK(std::abs(gpd_cdf(261.0, kFitted) - 0.90) <= 0.015);
    CHECK(std::abs(gpd_cdf(604.5, kFitted) - 0.95) <= 0.015);
}

TEST_CASE("cohort scale gap at 13 loc") {
    GpdParams small{1.5969, 0.5, 14.249};
    GpdParams large{1.5708, 0.5, 10.822};
    double delta = gpd_cdf(13.0, large) - gpd_cdf(13.0, small);
    CHECK(delta == Catch::Approx(0.0603).margin(0.001));
    CHECK(delta == Catch::Approx(0.060330380347243160).epsilon(1e-10));
}

TEST_CASE("gpd quantile closed-form anchors") {
    CHECK(gpd_quantile(0.0, kFitted) == kFitted.location);
    CHECK(gpd_quantile(0.5, kFitted) == Catch::Approx(17.127522907209564).epsilon(1e-12));
    CHECK(gpd_quantile(0.90, kFitted) == Catch::Approx(265.44273823891605).epsilon(1e-12));
    CHECK(gpd_quantile(0.95, kFitted) == Catch::Approx(746.86653631911049).epsilon(1e-12));
    CHECK_THROWS_AS(gpd_quantile(1.0, kFitted), std::domain_error);
    CHECK_THROWS_AS(gpd_quantile(-0.1, kFitted), std::domain_error);
}

TEST_CASE("quantile and cdf round trip across families") {
    std::vector<FamilyModel> models = {
        FamilyModel::gpd(kFitted),           FamilyModel::gpd({0.0, 0.5, 10.0}), FamilyModel::gpd({-0.3, 0.0, 5.0}),
        {Family::Exponential, {0.25, 0.5}},  {Family::Pareto, {1.0, 2.5}},       {Family::PowerLaw, {1.0, 2.8}},
        {Family::Weibull, {1.5, 10.0, 0.5}},
    };
    for (const FamilyModel& m : models) {
        for (double q = 0.0; q <= 0.999; q += 0.001) {
            double x = family_quantile(q, m);
            CHECK(std::abs(family_cdf(x, m) - q) <= 1e-9);
        }
    }
}

TEST_CASE("shape branch is continuous at zero") {
    GpdParams zero{0.0, 0.5, 13.854};
    for (double xi : {1e-6, -1e-6}) {
        GpdParams near{xi, 0.5, 13.854};
        double worst = 0.0;
        for (double x = 0.5; x <= 400.0; x += 0.25)
            worst = std::max(worst, std::abs(gpd_cdf(x, near) - gpd_cdf(x, zero)));
        CHECK(worst <= 1e-4);
    }
}

TEST_CASE("sampler determinism and edge cases") {
    CHECK(gpd_sample(0, kFitted, 42).empty());
    auto a = gpd_sample(100, kFitted, 42);
    auto b = gpd_sample(100, kFitted, 42);
    CHECK(a == b);
    auto c = gpd_sample(100, kFitted, 43);
    CHECK(a != c);
}

TEST_CASE("sampler matches the analytic distribution") {
    const std::size_t n = 100000;
    std::vector<double> sample = gpd_sample(n, kFitted, 20080301);
    std::sort(sample.begin(), sample.end());

    double median = 0.5 * (sample[n / 2 - 1] + sample[n / 2]);
    CHECK(std::abs(median - 17.127522907209564) <= 0.5);

    // two-sided Kolmogorov-Smirnov against the analytic cdf, 1% critical value
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = gpd_cdf(sample[i], kFitted);
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / static_cast<double>(n)));
        d = std::max(d, std::abs(f - static_cast<double>(i) / static_cast<double>(n)));
    }
    double critical = 1.6276 / std::sqrt(static_cast<double>(n));
    CHECK(d < critical);
}

TEST_CASE("family identities") {
    // exponential is the zero-shape gpd
    FamilyModel exp_model{Family::Exponential, {0.25, 0.5}};
    GpdParams gpd_zero{0.0, 0.5, 4.0};  // lambda = 1/sigma
    for (double x = 0.5; x < 40.0; x += 0.7)
        CHECK(family_cdf(x, exp_model) == Catch::Approx(gpd_cdf(x, gpd_zero)).margin(1e-12));

    FamilyModel pareto{Family::Pareto, {1.0, 1.0}};
    CHECK(family_cdf(2.0, pareto) == Catch::Approx(0.5));

    // weibull with unit shape reduces to the exponential
    FamilyModel weibull{Family::Weibull, {1.0, 4.0, 0.5}};
    for (double x = 0.5; x < 40.0; x += 0.7)
        CHECK(family_cdf(x, weibull) == Catch::Approx(family_cdf(x, exp_model)).margin(1e-12));
}

TEST_CASE("cdf is monotone and bounded") {
    std::vector<FamilyModel> models = {FamilyModel::gpd(kFitted),
                                       {Family::Pareto, {1.0, 2.5}},
                                       {Family::Weibull, {1.5, 10.0, 0.5}},
                                       {Family::PowerLaw, {1.0, 2.8}},
                                       {Family::Exponential, {0.25, 0.5}}};
    for (const FamilyModel& m : models) {
        double prev = -1.0;
        for (double x = 0.0; x <= 200.0; x += 0.5) {
            double f = family_cdf(x, m);
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
            CHECK(f >= prev);
            CHECK(family_pdf(x, m) >= 0.0);
            prev = f;
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(gpd_cdf(1.0, GpdParams{1.0, 0.0, -1.0}), std::domain_error);
    CHECK_THROWS_AS(gpd_cdf(1.0, GpdParams{1.0, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(family_cdf(1.0, FamilyModel{Family::Exponential, {-1.0, 0.0}}), std::domain_error);
    CHECK_THROWS_AS(family_cdf(1.0, FamilyModel{Family::Pareto, {0.0, 1.0}}), std::domain_error);
    CHECK_THROWS_AS(family_cdf(1.0, FamilyModel{Family::PowerLaw, {1.0, 1.0}}), std::domain_error);
    CHECK_THROWS_AS(family_cdf(1.0, FamilyModel{Family::Weibull, {1.0, -2.0, 0.0}}), std::domain_error);
    CHECK_THROWS_AS(family_cdf(1.0, FamilyModel{Family::Gpd, {1.0}}), std::domain_error);
}

TEST_CASE("family names round trip") {
    for (Family f : kAllFamilies) CHECK(family_from_name(family_name(f)) == f);
    CHECK(family_from_name("GPD") == Family::Gpd);
    CHECK_FALSE(family_from_name("zipf").has_value());
}
