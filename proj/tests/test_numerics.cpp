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

#include <cmath>
#include <cstring>
#include <random>

#include "doctest.h"
#include "epicast/numerics.hpp"
#include "oracles.hpp"

using namespace epicast;
using numerics::Matrix;
using numerics::Vector;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (const double v : row) {
            m(i, j++) = v;
        }
        ++i;
    }
    return m;
}

Matrix random_spd(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(dim, dim);
    for (auto& v : m.data()) {
        v = normal(rng);
    }
    Matrix a(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            double acc = i == j ? double(dim) : 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                acc += m(k, i) * m(k, j);
            }
            a(i, j) = acc;
        }
    }
    return a;
}

} // namespace

TEST_CASE("cholesky of the identity is the identity") {
    const auto f = numerics::cholesky(Matrix::identity(3));
    CHECK(f.dim == 3);
    CHECK(f.lower == Matrix::identity(3));
}

TEST_CASE("cholesky matches hand elimination and the naive oracle") {
    const auto a = from_rows({{4.0, 2.0}, {2.0, 3.0}});
    const auto f = numerics::cholesky(a);
    CHECK(f.lower(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.lower(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.lower(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(f.lower(0, 1) == 0.0);

    const auto naive = oracles::naive_cholesky(a);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(f.lower(i, j) == doctest::Approx(naive(i, j)).epsilon(1e-14));
        }
    }
}

TEST_CASE("cholesky rejects an indefinite matrix with the pivot index") {
    const auto a = from_rows({{1.0, 2.0}, {2.0, 1.0}});
    CHECK_THROWS_AS(numerics::cholesky(a), NotPositiveDefinite);
    try {
        numerics::cholesky(a);
    } catch (const NotPositiveDefinite& e) {
        CHECK(e.pivot_index == 1);
    }
}

TEST_CASE("cholesky precondition checks") {
    CHECK_THROWS_AS(numerics::cholesky(Matrix(2, 3)), DimensionMismatch);
    CHECK_THROWS_AS(numerics::cholesky(Matrix()), DimensionMismatch);
    CHECK_THROWS_AS(numerics::cholesky(from_rows({{1.0, 0.1}, {0.2, 1.0}})),
                    std::invalid_argument);
    auto nan = from_rows({{1.0, 0.0}, {0.0, 1.0}});
    nan(0, 0) = std::nan("");
    CHECK_THROWS_AS(numerics::cholesky(nan), std::invalid_argument);
}

TEST_CASE("solve_spd on the identity returns the rhs") {
    const auto f = numerics::cholesky(Matrix::identity(2));
    const Vector x = numerics::solve_spd(f, std::vector<double>{5.0, -2.0});
    CHECK(x[0] == 5.0);
    CHECK(x[1] == -2.0);
}

TEST_CASE("solve_spd reproduces the 2x2 hand solve") {
    const auto f = numerics::cholesky(from_rows({{4.0, 2.0}, {2.0, 3.0}}));
    const Vector x = numerics::solve_spd(f, std::vector<double>{8.0, 7.0});
    CHECK(x[0] == doctest::Approx(1.25).epsilon(1e-13));
    CHECK(x[1] == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(4.0 * x[0] + 2.0 * x[1] == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("solve_spd rejects a wrong-sized rhs") {
    const auto f = numerics::cholesky(Matrix::identity(2));
    CHECK_THROWS_AS(numerics::solve_spd(f, std::vector<double>{1.0, 2.0, 3.0}),
                    DimensionMismatch);
}

TEST_CASE("log_det matches hand arithmetic") {
    CHECK(numerics::log_det(numerics::cholesky(Matrix::identity(4))) == 0.0);
    CHECK(numerics::log_det(numerics::cholesky(from_rows({{2.0, 0.0}, {0.0, 8.0}}))) ==
          doctest::Approx(2.772588722239781).epsilon(1e-12));
    CHECK(numerics::log_det(numerics::cholesky(from_rows({{4.0, 2.0}, {2.0, 3.0}}))) ==
          doctest::Approx(2.0794415416798357).epsilon(1e-12));
}

TEST_CASE("solve recovers planted solutions on random SPD systems up to dim 50") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (const std::size_t dim : {2u, 3u, 5u, 10u, 25u, 50u}) {
        for (int rep = 0; rep < 5; ++rep) {
            const Matrix a = random_spd(dim, rng);
            Vector x(dim);
            for (auto& v : x) {
                v = u(rng);
            }
            Vector b(dim, 0.0);
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) {
                    b[i] += a(i, j) * x[j];
                }
            }
            const Vector got = numerics::solve_spd(numerics::cholesky(a), b);
            double err = 0.0, norm = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                err += (got[i] - x[i]) * (got[i] - x[i]);
                norm += x[i] * x[i];
            }
            CHECK(std::sqrt(err) <= 1e-8 * std::max(1.0, std::sqrt(norm)));
        }
    }
}

TEST_CASE("log_det agrees with the characteristic-polynomial oracle for dims 1..3") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t dim = 1 + std::size_t(rep % 3);
        const Matrix a = random_spd(dim, rng);
        const double got = numerics::log_det(numerics::cholesky(a));
        double want = 0.0;
        for (const double e : oracles::charpoly_eigenvalues(a)) {
            want += std::log(e);
        }
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("cholesky is bitwise deterministic") {
    std::mt19937_64 rng(99);
    const Matrix a = random_spd(12, rng);
    const auto f1 = numerics::cholesky(a);
    const auto f2 = numerics::cholesky(a);
    REQUIRE(f1.lower.data().size() == f2.lower.data().size());
    CHECK(std::memcmp(f1.lower.data().data(), f2.lower.data().data(),
                      f1.lower.data().size() * sizeof(double)) == 0);
}
