// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace commitdist {

/// Nonlinear least squares by Levenberg-Marquardt with a forward-difference
/// Jacobian. Sized for the handful of parameters the distribution fits need;
/// fully deterministic for fixed inputs.

struct LmOptions {
    int max_iterations = 200;
    double ftol = 1e-12;  // relative decrease of the objective
    double xtol = 1e-12;  // relative step size
    double gtol = 1e-12;  // gradient infinity norm
};

struct LmResult {
    std::vector<double> params;
    double sse = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

using ResidualFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;

namespace detail {

inline double sum_squares(const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
}

// Solves A x = b for a small symmetric positive(ish)-definite system by
// Gaussian elimination with partial pivoting. Returns false when singular.
inline bool solve_small(std::vector<double> a, std::vector<double> b, std::size_t n, std::vector<double>& x) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
        if (std::abs(a[pivot * n + col]) < 1e-300) return false;
        if (pivot != col) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            double factor = a[row * n + col] / a[col * n + col];
            for (std::size_t k = col; k < n; ++k) a[row * n + k] -= factor * a[col * n + k];
            b[row] -= factor * b[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i * n + k] * x[k];
        x[i] = s / a[i * n + i];
    }
    return true;
}

}  // namespace detail

inline LmResult levenberg_marquardt(const ResidualFn& residual_fn, std::vector<double> init,
                                    const LmOptions& options = {}) {
    const std::size_t p = init.size();
    if (p == 0) throw std::invalid_argument("levenberg_marquardt: no parameters");

    std::vector<double> residuals;
    residual_fn(init, residuals);
    const std::size_t m = residuals.size();
    if (m < p) throw std::invalid_argument("levenberg_marquardt: fewer residuals than parameters");

    LmResult result;
    result.params = init;
    result.sse = detail::sum_squares(residuals);

    std::vector<double> jacobian(m * p);
    std::vector<double> perturbed(m);
    std::vector<double> jtj(p * p);
    std::vector<double> jtr(p);
    std::vector<double> step;
    std::vector<double> trial(p);
    std::vector<double> trial_residuals;
    double lambda = 1e-3;

    for (; result.iterations < options.max_iterations; ++result.iterations) {
        // forward-difference Jacobian at the current point
        for (std::size_t j = 0; j < p; ++j) {
            double h = std::sqrt(std::numeric_limits<double>::epsilon()) * std::max(std::abs(result.params[j]), 1.0);
            std::vector<double> shifted = result.params;
            shifted[j] += h;
            residual_fn(shifted, perturbed);
            for (std::size_t i = 0; i < m; ++i) jacobian[i * p + j] = (perturbed[i] - residuals[i]) / h;
        }
        for (std::size_t a = 0; a < p; ++a) {
            jtr[a] = 0.0;
            for (std::size_t b = a; b < p; ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < m; ++i) s += jacobian[i * p + a] * jacobian[i * p + b];
                jtj[a * p + b] = s;
                jtj[b * p + a] = s;
            }
            for (std::size_t i = 0; i < m; ++i) jtr[a] += jacobian[i * p + a] * residuals[i];
        }

        double grad_norm = 0.0;
        for (std::size_t a = 0; a < p; ++a) grad_norm = std::max(grad_norm, std::abs(jtr[a]));
        if (grad_norm <= options.gtol) {
            result.converged = true;
            break;
        }

        bool accepted = false;
        while (lambda <= 1e12) {
            std::vector<double> damped = jtj;
            for (std::size_t a = 0; a < p; ++a) damped[a * p + a] += lambda * std::max(jtj[a * p + a], 1e-12);
            std::vector<double> rhs(p);
            for (std::size_t a = 0; a < p; ++a) rhs[a] = -jtr[a];
            if (!detail::solve_small(damped, rhs, p, step)) {
                lambda *= 10.0;
                continue;
            }
            for (std::size_t a = 0; a < p; ++a) trial[a] = result.params[a] + step[a];
            residual_fn(trial, trial_residuals);
            double trial_sse = detail::sum_squares(trial_residuals);
            if (std::isfinite(trial_sse) && trial_sse < result.sse) {
                double step_norm = 0.0;
                double param_norm = 0.0;
                for (std::size_t a = 0; a < p; ++a) {
                    step_norm = std::max(step_norm, std::abs(step[a]));
                    param_norm = std::max(param_norm, std::abs(result.params[a]));
                }
                double decrease = result.sse - trial_sse;
                result.params = trial;
                residuals = trial_residuals;
                result.sse = trial_sse;
                lambda = std::max(lambda / 10.0, 1e-12);
                accepted = true;
                if (decrease <= options.ftol * (result.sse + options.ftol) ||
                    step_norm <= options.xtol * (param_norm + options.xtol))
                    result.converged = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!accepted) {
            // no downhill step exists at any damping: stationary point
            result.converged = true;
            break;
        }
        if (result.converged) break;
    }
    return result;
}

}  // namespace commitdist
