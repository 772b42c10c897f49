// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <cctype>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "commitdist/gpd.hpp"

namespace commitdist {

/// Candidate model families for the commit-size distribution.
enum class Family { Gpd, Exponential, Pareto, PowerLaw, Weibull };

inline constexpr Family kAllFamilies[] = {Family::Gpd, Family::Exponential, Family::Pareto, Family::PowerLaw,
                                          Family::Weibull};

inline std::string_view family_name(Family family) {
    switch (family) {
        case Family::Gpd: return "gpd";
        case Family::Exponential: return "exponential";
        case Family::Pareto: return "pareto";
        case Family::PowerLaw: return "powerlaw";
        case Family::Weibull: return "weibull";
    }
    return "unknown";
}

inline std::optional<Family> family_from_name(std::string_view name) {
    std::string lower;
    for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "gpd") return Family::Gpd;
    if (lower == "exponential" || lower == "exp") return Family::Exponential;
    if (lower == "pareto") return Family::Pareto;
    if (lower == "powerlaw" || lower == "power-law") return Family::PowerLaw;
    if (lower == "weibull") return Family::Weibull;
    return std::nullopt;
}

/// One fitted (or fittable) model. Parameter layout by family:
///   gpd:         {xi, theta, sigma}
///   exponential: {lambda, theta}           F(x) = 1 - exp(-lambda (x - theta))
///   pareto:      {xm, alpha}               F(x) = 1 - (xm / x)^alpha,  x >= xm
///   powerlaw:    {xmin, alpha}, alpha > 1  F(x) = 1 - (x / xmin)^(1 - alpha)
///   weibull:     {k, lambda, theta}        F(x) = 1 - exp(-((x - theta)/lambda)^k)
struct FamilyModel {
    Family family = Family::Gpd;
    std::vector<double> params;

    static FamilyModel gpd(const GpdParams& p) { return {Family::Gpd, {p.shape, p.location, p.scale}}; }

    GpdParams as_gpd() const {
        if (family != Family::Gpd || params.size() != 3) throw std::domain_error("model is not a gpd");
        return {params[0], params[1], params[2]};
    }
};

namespace detail {

inline void require(bool ok, const char* message) {
    if (!ok) throw std::domain_error(message);
}

inline void validate_family(const FamilyModel& m) {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    switch (m.family) {
        case Family::Gpd:
            m.as_gpd().validate();
            return;
        case Family::Exponential:
            require(m.params.size() == 2, "exponential: expected {lambda, theta}");
            require(positive(m.params[0]), "exponential: lambda must be positive");
            require(std::isfinite(m.params[1]), "exponential: theta must be finite");
            return;
        case Family::Pareto:
            require(m.params.size() == 2, "pareto: expected {xm, alpha}");
            require(positive(m.params[0]), "pareto: xm must be positive");
            require(positive(m.params[1]), "pareto: alpha must be positive");
            return;
        case Family::PowerLaw:
            require(m.params.size() == 2, "powerlaw: expected {xmin, alpha}");
            require(positive(m.params[0]), "powerlaw: xmin must be positive");
            require(m.params[1] > 1.0 && std::isfinite(m.params[1]), "powerlaw: alpha must exceed 1");
            return;
        case Family::Weibull:
            require(m.params.size() == 3, "weibull: expected {k, lambda, theta}");
            require(positive(m.params[0]), "weibull: k must be positive");
            require(positive(m.params[1]), "weibull: lambda must be positive");
            require(std::isfinite(m.params[2]), "weibull: theta must be finite");
            return;
    }
    throw std::domain_error("unknown family");
}

}  // namespace detail

inline double family_cdf(double x, const FamilyModel& m) {
    detail::validate_family(m);
    switch (m.family) {
        case Family::Gpd: return gpd_cdf(x, m.as_gpd());
        case Family::Exponential: {
            double lambda = m.params[0], theta = m.params[1];
            if (x <= theta) return 0.0;
            return -std::expm1(-lambda * (x - theta));
        }
        case Family::Pareto: {
            double xm = m.params[0], alpha = m.params[1];
            if (x <= xm) return 0.0;
            return -std::expm1(alpha * std::log(xm / x));
        }
        case Family::PowerLaw: {
            double xmin = m.params[0], alpha = m.params[1];
            if (x <= xmin) return 0.0;
            return -std::expm1((1.0 - alpha) * std::log(x / xmin));
        }
        case Family::Weibull: {
            double k = m.params[0], lambda = m.params[1], theta = m.params[2];
            if (x <= theta) return 0.0;
            return -std::expm1(-std::pow((x - theta) / lambda, k));
        }
    }
    throw std::domain_error("unknown family");
}

inline double family_pdf(double x, const FamilyModel& m) {
    detail::validate_family(m);
    switch (m.family) {
        case Family::Gpd: return gpd_pdf(x, m.as_gpd());
        case Family::Exponential: {
            double lambda = m.params[0], theta = m.params[1];
            if (x < theta) return 0.0;
            return lambda * std::exp(-lambda * (x - theta));
        }
        case Family::Pareto: {
            double xm = m.params[0], alpha = m.params[1];
            if (x < xm) return 0.0;
            return alpha / x * std::exp(alpha * std::log(xm / x));
        }
        case Family::PowerLaw: {
            double xmin = m.params[0], alpha = m.params[1];
            if (x < xmin) return 0.0;
            return (alpha - 1.0) / xmin * std::exp(-alpha * std::log(x / xmin));
        }
        case Family::Weibull: {
            double k = m.params[0], lambda = m.params[1], theta = m.params[2];
            if (x < theta) return 0.0;
            double z = (x - theta) / lambda;
            if (z == 0.0) return k == 1.0 ? 1.0 / lambda : (k < 1.0 ? std::numeric_limits<double>::infinity() : 0.0);
            return k / lambda * std::pow(z, k - 1.0) * std::exp(-std::pow(z, k));
        }
    }
    throw std::domain_error("unknown family");
}

inline double family_quantile(double prob, const FamilyModel& m) {
    detail::validate_family(m);
    if (!(prob >= 0.0) || prob >= 1.0) throw std::domain_error("quantile probability must lie in [0, 1)");
    switch (m.family) {
        case Family::Gpd: return gpd_quantile(prob, m.as_gpd());
        case Family::Exponential: return m.params[1] - std::log1p(-prob) / m.params[0];
        case Family::Pareto: return m.params[0] * std::exp(-std::log1p(-prob) / m.params[1]);
        case Family::PowerLaw: return m.params[0] * std::exp(-std::log1p(-prob) / (m.params[1] - 1.0));
        case Family::Weibull: {
            double k = m.params[0], lambda = m.params[1], theta = m.params[2];
            return theta + lambda * std::pow(-std::log1p(-prob), 1.0 / k);
        }
    }
    throw std::domain_error("unknown family");
}

/// Lower end of the model's support (where its cdf leaves 0).
inline double family_support_start(const FamilyModel& m) {
    switch (m.family) {
        case Family::Gpd: return m.params[1];
        case Family::Exponential: return m.params[1];
        case Family::Pareto: return m.params[0];
        case Family::PowerLaw: return m.params[0];
        case Family::Weibull: return m.params[2];
    }
    throw std::domain_error("unknown family");
}

}  // namespace commitdist
