/*
 * Copyright 2026 the epicast authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "epicast/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace epicast::models {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double mean_of(std::span<const double> v) {
    double acc = 0.0;
    for (const double x : v) {
        acc += x;
    }
    return v.empty() ? 0.0 : acc / double(v.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

// Escalating diagonal regularization before giving up: 1e-10 * mean(diag) is
// the base rung, then 10x and 100x of it.
CholeskyFactor cholesky_with_jitter(const Matrix& a) {
    try {
        return numerics::cholesky(a);
    } catch (const NotPositiveDefinite&) {
    }
    double diag_mean = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        diag_mean += a(i, i);
    }
    diag_mean /= double(a.rows());
    const double base = 1e-10 * diag_mean;
    for (const double scale : {1.0, 10.0, 100.0}) {
        Matrix jittered = a;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            jittered(i, i) += base * scale;
        }
        try {
            return numerics::cholesky(jittered);
        } catch (const NotPositiveDefinite&) {
        }
    }
    // Re-run the plain factorization so the error reports the true pivot.
    return numerics::cholesky(a);
}

void check_targets(std::span<const double> y, std::size_t n_rows) {
    if (y.size() != n_rows) {
        throw DimensionMismatch("target length " + std::to_string(y.size()) +
                                " does not match feature rows " + std::to_string(n_rows));
    }
    for (const double v : y) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("targets contain a non-finite value");
        }
    }
}

void check_spec(const KernelSpec& spec) {
    if (!(spec.sigma0_sq >= 0.0) || !std::isfinite(spec.sigma0_sq) ||
        !(spec.noise_level >= 0.0) || !std::isfinite(spec.noise_level)) {
        throw std::invalid_argument("kernel spec fields must be finite and non-negative");
    }
}

} // namespace

DesignMatrix build_features(std::span<const int> x_raw, int degree, bool standardize) {
    if (x_raw.empty()) {
        throw std::invalid_argument("build_features: empty day-index list");
    }
    if (degree < 1) {
        throw std::invalid_argument("build_features: degree must be >= 1");
    }
    const std::size_t n = x_raw.size();
    double mu = 0.0;
    for (const int x : x_raw) {
        mu += double(x);
    }
    mu /= double(n);
    double var = 0.0;
    for (const int x : x_raw) {
        var += (double(x) - mu) * (double(x) - mu);
    }
    const double s = std::sqrt(var / double(n)); // population standard deviation
    if (standardize && s <= 0.0) {
        throw DegenerateInput("cannot standardize a constant day-index list");
    }
    DesignMatrix out;
    out.x_raw.assign(x_raw.begin(), x_raw.end());
    out.params = FeatureParams{degree, standardize, mu, standardize ? s : 1.0};
    out.phi = features_for(out.params, x_raw);
    return out;
}

Matrix features_for(const FeatureParams& params, std::span<const int> x_new) {
    Matrix phi(x_new.size(), std::size_t(params.degree));
    for (std::size_t i = 0; i < x_new.size(); ++i) {
        const double base =
            params.standardize ? (double(x_new[i]) - params.mu) / params.s : double(x_new[i]);
        double power = 1.0;
        for (int j = 0; j < params.degree; ++j) {
            power *= base;
            phi(i, std::size_t(j)) = power;
        }
    }
    return phi;
}

// --------------------------------------------------------------------------
// Bayesian Ridge
// --------------------------------------------------------------------------

BRRModel brr_fit(const DesignMatrix& phi, std::span<const double> y, const BrrConfig& config) {
    const std::size_t n = phi.phi.rows();
    const std::size_t p = phi.phi.cols();
    if (n < 2) {
        throw std::invalid_argument("brr_fit requires at least 2 observations");
    }
    check_targets(y, n);

    const double y_offset = mean_of(y);
    Vector y_c(n);
    for (std::size_t i = 0; i < n; ++i) {
        y_c[i] = y[i] - y_offset;
    }

    // Center the feature columns; the intercept is recovered afterwards and is
    // not subject to the weight prior.
    Vector col_means(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            col_means[j] += phi.phi(i, j);
        }
        col_means[j] /= double(n);
    }
    Matrix x(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            x(i, j) = phi.phi(i, j) - col_means[j];
        }
    }

    Matrix gram(p, p);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a; b < p; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += x(i, a) * x(i, b);
            }
            gram(a, b) = acc;
            gram(b, a) = acc;
        }
    }
    Vector xty(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            xty[j] += x(i, j) * y_c[i];
        }
    }

    // Spectrum of X^T X, computed once; it feeds every gamma update.
    Vector eigs = symmetric_eigenvalues(gram);
    for (double& e : eigs) {
        e = std::max(e, 0.0);
    }

    double var_y = 0.0;
    for (const double v : y_c) {
        var_y += v * v;
    }
    var_y /= double(n);
    double alpha = config.alpha_init.value_or(var_y > 0.0 ? 1.0 / var_y : 1.0);
    double lambda = config.lambda_init;
    if (!(alpha > 0.0) || !(lambda > 0.0)) {
        throw std::invalid_argument("brr_fit: initial precisions must be positive");
    }

    const auto posterior = [&](double lam, double alf) -> std::pair<CholeskyFactor, Vector> {
        Matrix a = gram;
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                a(i, j) *= alf;
            }
            a(i, i) += lam;
        }
        CholeskyFactor factor = [&] {
            try {
                return cholesky_with_jitter(a);
            } catch (const NotPositiveDefinite& e) {
                throw SingularSystem(std::string("evidence system not positive-definite: ") +
                                     e.what());
            }
        }();
        Vector rhs = xty;
        for (double& v : rhs) {
            v *= alf;
        }
        Vector solution = numerics::solve_spd(factor, rhs);
        return {std::move(factor), std::move(solution)};
    };

    int iters = 0;
    bool converged = false;
    Vector m(p, 0.0);
    for (int it = 0; it < config.max_iter; ++it) {
        iters = it + 1;
        m = posterior(lambda, alpha).second;

        double gamma = 0.0;
        for (const double e : eigs) {
            gamma += alpha * e / (lambda + alpha * e);
        }
        double mtm = dot(m, m);
        double rss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double fit = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                fit += x(i, j) * m[j];
            }
            const double r = y_c[i] - fit;
            rss += r * r;
        }
        const double lambda_new = (gamma + 2.0 * config.l1) / (mtm + 2.0 * config.l2);
        const double alpha_new = (double(n) - gamma + 2.0 * config.a1) / (rss + 2.0 * config.a2);
        const double dl = std::abs(lambda_new - lambda) / std::max(std::abs(lambda), 1e-300);
        const double da = std::abs(alpha_new - alpha) / std::max(std::abs(alpha), 1e-300);
        lambda = lambda_new;
        alpha = alpha_new;
        if (std::max(dl, da) < config.tol) {
            converged = true;
            break;
        }
    }

    // Final posterior at the last precisions.
    auto [factor, m_final] = posterior(lambda, alpha);
    Matrix cov(p, p);
    for (std::size_t j = 0; j < p; ++j) {
        Vector e(p, 0.0);
        e[j] = 1.0;
        const Vector col = numerics::solve_spd(factor, e);
        for (std::size_t i = 0; i < p; ++i) {
            cov(i, j) = col[i];
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            const double sym = 0.5 * (cov(i, j) + cov(j, i));
            cov(i, j) = sym;
            cov(j, i) = sym;
        }
    }

    BRRModel model;
    model.weight_mean = m_final;
    model.weight_mean.push_back(-dot(col_means, m_final)); // intercept, last
    model.weight_cov = std::move(cov);
    model.alpha = alpha;
    model.lambda = lambda;
    model.n_iter_used = iters;
    model.converged = converged;
    model.feature_params = phi.params;
    model.feature_means = std::move(col_means);
    model.y_offset = y_offset;
    return model;
}

Prediction brr_predict(const BRRModel& model, std::span<const int> x_new) {
    Prediction out;
    if (x_new.empty()) {
        return out;
    }
    const Matrix phi = features_for(model.feature_params, x_new);
    const std::size_t p = phi.cols();
    out.mean.resize(x_new.size());
    out.std.resize(x_new.size());
    Vector centered(p), sc(p);
    for (std::size_t i = 0; i < x_new.size(); ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            centered[j] = phi(i, j) - model.feature_means[j];
        }
        double mu = model.y_offset;
        for (std::size_t j = 0; j < p; ++j) {
            mu += centered[j] * model.weight_mean[j];
        }
        for (std::size_t j = 0; j < p; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < p; ++k) {
                acc += model.weight_cov(j, k) * centered[k];
            }
            sc[j] = acc;
        }
        const double var = 1.0 / model.alpha + dot(centered, sc);
        out.mean[i] = mu;
        out.std[i] = std::sqrt(std::max(var, 0.0));
    }
    return out;
}

// --------------------------------------------------------------------------
// Gaussian Process
// --------------------------------------------------------------------------

Matrix kernel_eval(const KernelSpec& spec, const Matrix& a, const Matrix& b, bool include_white) {
    check_spec(spec);
    if (a.cols() != b.cols()) {
        throw DimensionMismatch("kernel_eval: inputs have " + std::to_string(a.cols()) + " and " +
                                std::to_string(b.cols()) + " columns");
    }
    Matrix k(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            k(i, j) = spec.sigma0_sq + dot(a.row(i), b.row(j));
        }
    }
    if (include_white) {
        const std::size_t d = std::min(a.rows(), b.rows());
        for (std::size_t i = 0; i < d; ++i) {
            k(i, i) += spec.noise_level;
        }
    }
    return k;
}

double log_marginal_likelihood(const KernelSpec& spec, const DesignMatrix& phi,
                               std::span<const double> y_c) {
    const std::size_t n = phi.phi.rows();
    check_targets(y_c, n);
    const Matrix k = kernel_eval(spec, phi.phi, phi.phi, true);
    const CholeskyFactor factor = cholesky_with_jitter(k);
    const Vector dual = numerics::solve_spd(factor, y_c);
    return -0.5 * dot(y_c, dual) - 0.5 * numerics::log_det(factor) -
           0.5 * double(n) * std::log(2.0 * std::numbers::pi);
}

namespace {

constexpr double kInvGolden = 0.6180339887498949; // (sqrt(5)-1)/2

// Golden-section maximization of f over [lo, hi]; f may return -inf.
template <typename F>
double golden_max(F&& f, double lo, double hi) {
    double a = lo, b = hi;
    double c = b - kInvGolden * (b - a);
    double d = a + kInvGolden * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 1e-7) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvGolden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvGolden * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

KernelSpec optimize_hyperparams(const DesignMatrix& phi, std::span<const double> y_c,
                                const HyperBounds& bounds, int restarts, std::uint64_t seed,
                                const KernelSpec* init) {
    const double lo[2] = {std::log(bounds.sigma0_sq_lo), std::log(bounds.noise_lo)};
    const double hi[2] = {std::log(bounds.sigma0_sq_hi), std::log(bounds.noise_hi)};

    const auto objective = [&](double t0, double t1) -> double {
        const KernelSpec spec{std::exp(t0), std::exp(t1)};
        try {
            const double value = log_marginal_likelihood(spec, phi, y_c);
            return std::isfinite(value) ? value : kNegInf;
        } catch (const NotPositiveDefinite&) {
            return kNegInf;
        }
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u0(lo[0], hi[0]);
    std::uniform_real_distribution<double> u1(lo[1], hi[1]);

    std::vector<std::array<double, 2>> starts;
    const int total = std::max(restarts, 1);
    if (init != nullptr) {
        const auto clamp_log = [](double v, double l, double h) {
            return std::clamp(std::log(std::max(v, std::exp(l))), l, h);
        };
        starts.push_back({clamp_log(init->sigma0_sq, lo[0], hi[0]),
                          clamp_log(init->noise_level, lo[1], hi[1])});
    }
    while (int(starts.size()) < total) {
        starts.push_back({u0(rng), u1(rng)});
    }

    double best_value = kNegInf;
    std::array<double, 2> best = starts.front();
    for (auto theta : starts) {
        double current = objective(theta[0], theta[1]);
        for (int sweep = 0; sweep < 100; ++sweep) {
            theta[0] = golden_max([&](double v) { return objective(v, theta[1]); }, lo[0], hi[0]);
            theta[1] = golden_max([&](double v) { return objective(theta[0], v); }, lo[1], hi[1]);
            const double value = objective(theta[0], theta[1]);
            if (value - current < 1e-6) {
                current = std::max(value, current);
                break;
            }
            current = value;
        }
        if (current > best_value) {
            best_value = current;
            best = theta;
        }
    }
    return KernelSpec{std::exp(best[0]), std::exp(best[1])};
}

GPRModel gpr_fit(const DesignMatrix& phi, std::span<const double> y, const KernelSpec& spec_init,
                 const GprOptions& options) {
    const std::size_t n = phi.phi.rows();
    if (n < 2) {
        throw std::invalid_argument("gpr_fit requires at least 2 observations");
    }
    check_targets(y, n);
    check_spec(spec_init);

    GPRModel model;
    model.y_offset = mean_of(y);
    double var = 0.0;
    for (const double v : y) {
        var += (v - model.y_offset) * (v - model.y_offset);
    }
    const double sd = std::sqrt(var / double(n));
    model.y_scale = sd > 0.0 ? sd : 1.0;

    Vector y_c(n);
    for (std::size_t i = 0; i < n; ++i) {
        y_c[i] = (y[i] - model.y_offset) / model.y_scale;
    }

    model.spec = options.optimize
                     ? optimize_hyperparams(phi, y_c, options.bounds, options.restarts,
                                            options.seed, &spec_init)
                     : spec_init;

    const Matrix k = kernel_eval(model.spec, phi.phi, phi.phi, true);
    model.chol = cholesky_with_jitter(k);
    model.dual = numerics::solve_spd(model.chol, y_c);
    model.log_marginal = -0.5 * dot(y_c, model.dual) - 0.5 * numerics::log_det(model.chol) -
                         0.5 * double(n) * std::log(2.0 * std::numbers::pi);
    model.train_phi = phi;
    return model;
}

Prediction gpr_predict(const GPRModel& model, std::span<const int> x_new) {
    Prediction out;
    if (x_new.empty()) {
        return out;
    }
    const Matrix phi_new = features_for(model.train_phi.params, x_new);
    const Matrix cross = kernel_eval(model.spec, phi_new, model.train_phi.phi, false);
    out.mean.resize(x_new.size());
    out.std.resize(x_new.size());
    for (std::size_t i = 0; i < x_new.size(); ++i) {
        const auto k_star = cross.row(i);
        out.mean[i] = model.y_scale * dot(k_star, model.dual) + model.y_offset;
        const double k_self = model.spec.sigma0_sq + dot(phi_new.row(i), phi_new.row(i));
        const Vector v = numerics::solve_spd(model.chol, k_star);
        double variance = k_self - dot(k_star, v);
        if (variance < 0.0) {
            variance = 0.0;
            ++out.negative_variance_clamps;
        }
        out.std[i] = model.y_scale * std::sqrt(variance);
    }
    return out;
}

// --------------------------------------------------------------------------

Vector symmetric_eigenvalues(Matrix a) {
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n) {
        throw DimensionMismatch("symmetric_eigenvalues requires a square matrix");
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        scale = std::max(scale, std::abs(a(i, i)));
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                off += a(i, j) * a(i, j);
            }
        }
        if (std::sqrt(off) <= 1e-14 * std::max(scale, 1.0)) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) {
                        continue;
                    }
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(p, k) = a(k, p);
                    a(k, q) = s * akp + c * akq;
                    a(q, k) = a(k, q);
                }
            }
        }
    }
    Vector eigs(n);
    for (std::size_t i = 0; i < n; ++i) {
        eigs[i] = a(i, i);
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

} // namespace epicast::models
