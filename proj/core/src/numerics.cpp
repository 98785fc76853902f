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

#include "epicast/numerics.hpp"

#include <cmath>
#include <string>

namespace epicast::numerics {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

CholeskyFactor cholesky(const Matrix& a) {
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n) {
        throw DimensionMismatch("cholesky requires a non-empty square matrix, got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    double max_abs = 0.0;
    for (const double v : a.data()) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("cholesky input contains a non-finite entry");
        }
        max_abs = std::max(max_abs, std::abs(v));
    }
    const double sym_tol = 1e-12 * std::max(max_abs, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(a(i, j) - a(j, i)) > sym_tol) {
                throw std::invalid_argument("cholesky input is not symmetric at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }

    // Cholesky-Crout, column by column.
    Matrix lower(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            diag -= lower(j, k) * lower(j, k);
        }
        if (!(diag > 0.0) || !std::isfinite(diag)) {
            throw NotPositiveDefinite("non-positive pivot " + std::to_string(diag) +
                                          " at index " + std::to_string(j),
                                      j);
        }
        lower(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double sum = a(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                sum -= lower(i, k) * lower(j, k);
            }
            lower(i, j) = sum / lower(j, j);
        }
    }
    return CholeskyFactor{n, std::move(lower)};
}

Vector solve_spd(const CholeskyFactor& f, std::span<const double> b) {
    const std::size_t n = f.dim;
    if (b.size() != n) {
        throw DimensionMismatch("solve_spd: rhs length " + std::to_string(b.size()) +
                                " does not match factor dimension " + std::to_string(n));
    }
    const Matrix& ell = f.lower;
    Vector x(b.begin(), b.end());
    // L z = b
    for (std::size_t i = 0; i < n; ++i) {
        double sum = x[i];
        for (std::size_t k = 0; k < i; ++k) {
            sum -= ell(i, k) * x[k];
        }
        x[i] = sum / ell(i, i);
    }
    // L^T x = z
    for (std::size_t ri = n; ri-- > 0;) {
        double sum = x[ri];
        for (std::size_t k = ri + 1; k < n; ++k) {
            sum -= ell(k, ri) * x[k];
        }
        x[ri] = sum / ell(ri, ri);
    }
    return x;
}

double log_det(const CholeskyFactor& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.dim; ++i) {
        acc += std::log(f.lower(i, i));
    }
    return 2.0 * acc;
}

} // namespace epicast::numerics
