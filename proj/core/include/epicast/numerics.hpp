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

#ifndef EPICAST_NUMERICS_HPP
#define EPICAST_NUMERICS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "epicast/errors.hpp"

namespace epicast::numerics {

using Vector = std::vector<double>;

/// Dense row-major 64-bit float matrix. Gram and design matrices here are a
/// few hundred rows at most, so no sparse or blocked storage.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    /// Row i as a contiguous view.
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_).subspan(i * cols_, cols_);
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Lower-triangular Cholesky factor L with A = L*L^T.
struct CholeskyFactor {
    std::size_t dim = 0;
    Matrix lower;
};

/// Factor a symmetric positive-definite matrix. The input must be square,
/// finite and symmetric to 1e-12 relative; a non-positive pivot throws
/// NotPositiveDefinite with the offending pivot index. No jitter is added
/// here — callers own their regularization ladder.
CholeskyFactor cholesky(const Matrix& a);

/// Solve A x = b through forward and back substitution on the factor.
Vector solve_spd(const CholeskyFactor& f, std::span<const double> b);

/// log(det A) = 2 * sum_i log L_ii.
double log_det(const CholeskyFactor& f);

} // namespace epicast::numerics

#endif // EPICAST_NUMERICS_HPP
