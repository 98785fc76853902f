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

#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "epicast/models.hpp"
#include "epicast/numerics.hpp"

using namespace epicast;

namespace {

// Cumulative outbreak-shaped curve, enough like the real series to make the
// fit timings representative.
std::vector<double> synthetic_curve(int n) {
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        y[std::size_t(i)] = 50000.0 / (1.0 + std::exp(-(i - 0.7 * n) / (0.09 * n)));
    }
    return y;
}

models::DesignMatrix features(int n, int degree) {
    std::vector<int> x(static_cast<std::size_t>(n));
    std::iota(x.begin(), x.end(), 0);
    return models::build_features(x, degree, true);
}

numerics::Matrix random_spd(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    numerics::Matrix m(dim, dim);
    for (auto& v : m.data()) {
        v = normal(rng);
    }
    numerics::Matrix a(dim, dim);
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

static void BM_Cholesky(benchmark::State& state) {
    const auto a = random_spd(std::size_t(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(numerics::cholesky(a));
    }
}
BENCHMARK(BM_Cholesky)->Arg(16)->Arg(67)->Arg(128);

static void BM_BrrFit(benchmark::State& state) {
    const int n = int(state.range(0));
    const auto phi = features(n, 3);
    const auto y = synthetic_curve(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(models::brr_fit(phi, y));
    }
}
BENCHMARK(BM_BrrFit)->Arg(67)->Arg(100);

static void BM_GprFitFixedKernel(benchmark::State& state) {
    const int n = int(state.range(0));
    const auto phi = features(n, 3);
    const auto y = synthetic_curve(n);
    models::GprOptions opt;
    opt.optimize = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(models::gpr_fit(phi, y, models::KernelSpec{1.0, 1.0}, opt));
    }
}
BENCHMARK(BM_GprFitFixedKernel)->Arg(67)->Arg(100);

static void BM_GprFitOptimized(benchmark::State& state) {
    const int n = int(state.range(0));
    const auto phi = features(n, 3);
    const auto y = synthetic_curve(n);
    models::GprOptions opt;
    opt.restarts = 3;
    opt.seed = 42;
    for (auto _ : state) {
        benchmark::DoNotOptimize(models::gpr_fit(phi, y, models::KernelSpec{1.0, 1.0}, opt));
    }
}
BENCHMARK(BM_GprFitOptimized)->Arg(67)->Unit(benchmark::kMillisecond);

static void BM_BrrPredict(benchmark::State& state) {
    const auto phi = features(67, 3);
    const auto model = models::brr_fit(phi, synthetic_curve(67));
    std::vector<int> x(100);
    std::iota(x.begin(), x.end(), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(models::brr_predict(model, x));
    }
}
BENCHMARK(BM_BrrPredict);

static void BM_GprPredict(benchmark::State& state) {
    const auto phi = features(67, 3);
    models::GprOptions opt;
    opt.optimize = false;
    const auto model = models::gpr_fit(phi, synthetic_curve(67), models::KernelSpec{1.0, 0.1},
                                       opt);
    std::vector<int> x(100);
    std::iota(x.begin(), x.end(), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(models::gpr_predict(model, x));
    }
}
BENCHMARK(BM_GprPredict);

BENCHMARK_MAIN();
