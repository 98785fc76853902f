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

#ifndef EPICAST_MODELS_HPP
#define EPICAST_MODELS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "epicast/errors.hpp"
#include "epicast/numerics.hpp"

namespace epicast::models {

using numerics::CholeskyFactor;
using numerics::Matrix;
using numerics::Vector;

/// How day indices were turned into regression features; stored with every
/// fitted model so prediction reuses the train-time transform (mu and s are
/// never refit on test inputs).
struct FeatureParams {
    int degree = 3;
    bool standardize = true;
    double mu = 0.0; // mean of the training day indices
    double s = 1.0;  // population standard deviation of the training day indices
};

/// Polynomial features of the day index. Column j holds ((x-mu)/s)^(j+1) when
/// standardized, x^(j+1) otherwise; there is no intercept column (both
/// regressors center their targets instead).
struct DesignMatrix {
    std::vector<int> x_raw; // 0-based day indices from outbreak start
    FeatureParams params;
    Matrix phi; // shape (n, degree)
};

/// Build features from training day indices, deriving mu and s from `x_raw`.
/// Throws DegenerateInput when standardize is requested and all indices are equal.
DesignMatrix build_features(std::span<const int> x_raw, int degree, bool standardize);

/// Build features for new inputs with a previously fitted transform.
Matrix features_for(const FeatureParams& params, std::span<const int> x_new);

/// Pointwise predictive distribution.
struct Prediction {
    Vector mean;
    Vector std;
    int negative_variance_clamps = 0; // diagnostics: variances clipped to zero
};

// --------------------------------------------------------------------------
// Bayesian Ridge regression, fitted by evidence approximation
// --------------------------------------------------------------------------

struct BrrConfig {
    std::optional<double> alpha_init; // default: 1/var(y)
    double lambda_init = 1.0;
    // Gamma hyperpriors on the two precisions; near-flat by default.
    double a1 = 1e-6;
    double a2 = 1e-6;
    double l1 = 1e-6;
    double l2 = 1e-6;
    int max_iter = 300;
    double tol = 1e-3; // relative change of alpha and lambda
};

/// Posterior of the Bayesian linear model after evidence maximization.
///
/// weight_mean holds the feature weights in column order followed by the
/// derived intercept (length degree + 1). The evidence loop runs on centered
/// feature columns and centered targets; weight_cov is the posterior
/// covariance of the feature-weight block.
struct BRRModel {
    Vector weight_mean;
    Matrix weight_cov;
    double alpha = 0.0;  // noise precision
    double lambda = 0.0; // weight precision
    int n_iter_used = 0;
    bool converged = false;
    FeatureParams feature_params;
    Vector feature_means; // training column means of phi
    double y_offset = 0.0;
};

/// Evidence-approximation fit: alternate the posterior update
///   S = (lambda I + alpha X^T X)^-1,  m = alpha S X^T y_c
/// with the MacKay re-estimates
///   gamma  = sum_j alpha e_j / (lambda + alpha e_j)   (e_j from X^T X)
///   lambda = (gamma + 2 l1) / (m^T m + 2 l2)
///   alpha  = (n - gamma + 2 a1) / (||y_c - X m||^2 + 2 a2)
/// until both precisions move less than tol (relative) or max_iter is hit.
/// X is the column-centered feature matrix and y_c the centered targets.
BRRModel brr_fit(const DesignMatrix& phi, std::span<const double> y, const BrrConfig& config = {});

/// Predictive mean Phi* m + y_offset and variance 1/alpha + phi*^T S phi*
/// per point, with features rebuilt through the stored transform.
Prediction brr_predict(const BRRModel& model, std::span<const int> x_new);

// --------------------------------------------------------------------------
// Gaussian Process regression with a DotProduct + White sum kernel
// --------------------------------------------------------------------------

/// k_dot(x, x') = sigma0_sq + x . x'; the white term adds noise_level on the
/// diagonal of the training Gram matrix only.
struct KernelSpec {
    double sigma0_sq = 1.0;
    double noise_level = 1.0;
};

/// Evaluate K[i][j] = sigma0_sq + row_i(a) . row_j(b). With include_white the
/// caller asserts a and b are the same inputs and noise_level lands on the
/// diagonal. Throws DimensionMismatch when column counts differ.
Matrix kernel_eval(const KernelSpec& spec, const Matrix& a, const Matrix& b, bool include_white);

/// Standard GP evidence
///   -1/2 y_c^T (K + noise I)^-1 y_c - 1/2 log det(K + noise I) - n/2 log 2 pi
/// with the shared jitter ladder before giving up on the factorization.
double log_marginal_likelihood(const KernelSpec& spec, const DesignMatrix& phi,
                               std::span<const double> y_c);

struct HyperBounds {
    double sigma0_sq_lo = 1e-5;
    double sigma0_sq_hi = 1e5;
    double noise_lo = 1e-5;
    double noise_hi = 1e5;
};

/// Maximize the log marginal likelihood over log-scale parameters with a
/// per-coordinate golden-section search, sweeping until the improvement drops
/// below 1e-6. `restarts` counts the total starting points: `init` (when
/// given) plus log-uniform draws from the seeded generator. Deterministic for
/// a fixed seed; bounds clamp, so there is no failure mode.
KernelSpec optimize_hyperparams(const DesignMatrix& phi, std::span<const double> y_c,
                                const HyperBounds& bounds, int restarts, std::uint64_t seed,
                                const KernelSpec* init = nullptr);

/// Exact GP posterior at the fitted kernel.
///
/// Targets are centered and scaled to unit variance before inference (the
/// kernel has no amplitude parameter, so raw-scale targets would drive the
/// evidence toward the noise bound); dual = (K + noise I)^-1 (y - y_offset)/y_scale.
struct GPRModel {
    KernelSpec spec; // post-optimization
    DesignMatrix train_phi;
    Vector dual;
    CholeskyFactor chol; // factor of K + noise I (plus any ladder jitter)
    double y_offset = 0.0;
    double y_scale = 1.0;
    double log_marginal = 0.0; // at the fitted spec, on scaled targets
};

struct GprOptions {
    bool optimize = true;
    HyperBounds bounds;
    int restarts = 3;
    std::uint64_t seed = 42;
};

GPRModel gpr_fit(const DesignMatrix& phi, std::span<const double> y, const KernelSpec& spec_init,
                 const GprOptions& options = {});

/// mean = K*^T dual (rescaled, plus y_offset); var = k(x*,x*) - k*^T (K+noise I)^-1 k*
/// with the white noise excluded from cross- and test-self covariance — the
/// model predicts the latent trend, not a new noisy observation. Negative
/// variances are clamped to zero and counted.
Prediction gpr_predict(const GPRModel& model, std::span<const int> x_new);

// --------------------------------------------------------------------------

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending. Used for the gamma update in brr_fit; the matrices there are
/// (degree x degree), so no general-purpose eigensolver is warranted.
Vector symmetric_eigenvalues(Matrix a);

} // namespace epicast::models

#endif // EPICAST_MODELS_HPP
