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

// Randomized property suites shared by the unit tests and the acceptance
// harness. Each suite runs a fixed number of seeded cases and returns how
// many violated the property (0 on a healthy build).

#ifndef EPICAST_TESTS_PROPERTY_SUITES_HPP
#define EPICAST_TESTS_PROPERTY_SUITES_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "epicast/evaluate.hpp"
#include "epicast/ingest.hpp"
#include "epicast/models.hpp"
#include "oracles.hpp"

namespace epicast::properties {

struct SuiteResult {
    int cases = 0;
    int failures = 0;
};

// Eigenvalues of K(X,X) + noise I stay above -1e-10 for any non-negative spec.
inline SuiteResult kernel_psd(int cases = 120, std::uint64_t seed = 9001) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(2, 3);
    std::uniform_real_distribution<double> entry(-3.0, 3.0);
    std::uniform_real_distribution<double> log_amp(-4.0, 3.0);
    SuiteResult res{cases, 0};
    for (int c = 0; c < cases; ++c) {
        const int n = dim(rng);
        const int d = dim(rng) - 1;
        numerics::Matrix x(static_cast<std::size_t>(n), static_cast<std::size_t>(d));
        for (auto& v : x.data()) {
            v = entry(rng);
        }
        models::KernelSpec spec{c % 10 == 0 ? 0.0 : std::exp(log_amp(rng)),
                                c % 7 == 0 ? 0.0 : std::exp(log_amp(rng))};
        const auto k = models::kernel_eval(spec, x, x, true);
        const auto eigs = oracles::charpoly_eigenvalues(k);
        for (const double e : eigs) {
            if (e < -1e-10) {
                ++res.failures;
                break;
            }
        }
    }
    return res;
}

// kernel_eval(spec, a, a) is symmetric bit-for-bit.
inline SuiteResult kernel_symmetry(int cases = 120, std::uint64_t seed = 9002) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_real_distribution<double> entry(-50.0, 50.0);
    std::uniform_real_distribution<double> amp(0.0, 10.0);
    SuiteResult res{cases, 0};
    for (int c = 0; c < cases; ++c) {
        const std::size_t n = std::size_t(dim(rng));
        const std::size_t d = std::size_t(dim(rng));
        numerics::Matrix x(n, d);
        for (auto& v : x.data()) {
            v = entry(rng);
        }
        const models::KernelSpec spec{amp(rng), amp(rng)};
        const auto k = models::kernel_eval(spec, x, x, true);
        bool symmetric = true;
        for (std::size_t i = 0; i < n && symmetric; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (k(i, j) != k(j, i)) {
                    symmetric = false;
                    break;
                }
            }
        }
        if (!symmetric) {
            ++res.failures;
        }
    }
    return res;
}

// Concatenating the two split halves reproduces the input in order, and the
// test segment starts train_size days after the series start.
inline SuiteResult chrono_split_preserves(int cases = 150, std::uint64_t seed = 9003) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(7, 80);
    std::uniform_int_distribution<std::int64_t> count(0, 100000);
    std::uniform_real_distribution<double> frac(0.3, 0.8);
    SuiteResult res{cases, 0};
    for (int c = 0; c < cases; ++c) {
        ingest::CaseSeries series;
        series.country = "X";
        series.start_date = parse_mdy("1/22/20") + std::chrono::days{c};
        series.values.resize(std::size_t(len(rng)));
        for (auto& v : series.values) {
            v = count(rng);
        }
        const evaluate::SplitSpec spec{frac(rng)};
        const auto [train, test] = evaluate::chrono_split(series, spec);
        std::vector<std::int64_t> merged = train.values;
        merged.insert(merged.end(), test.values.begin(), test.values.end());
        const bool ok = merged == series.values && !test.values.empty() &&
                        train.values.size() >= 2 && train.start_date == series.start_date &&
                        test.start_date ==
                            series.start_date + std::chrono::days{long(train.values.size())};
        if (!ok) {
            ++res.failures;
        }
    }
    return res;
}

// rmse(p, a) == rmse(a, p) exactly; shifting both by c moves it by < 1e-9.
inline SuiteResult rmse_symmetry_translation(int cases = 150, std::uint64_t seed = 9004) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(1, 40);
    std::uniform_real_distribution<double> value(-1000.0, 1000.0);
    SuiteResult res{cases, 0};
    for (int c = 0; c < cases; ++c) {
        const std::size_t n = std::size_t(len(rng));
        std::vector<double> p(n), a(n), ps(n), as(n);
        const double shift = value(rng);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = value(rng);
            a[i] = value(rng);
            ps[i] = p[i] + shift;
            as[i] = a[i] + shift;
        }
        const double forward = evaluate::rmse(p, a);
        const double backward = evaluate::rmse(a, p);
        const double shifted = evaluate::rmse(ps, as);
        if (forward != backward || std::abs(shifted - forward) > 1e-9 * std::max(1.0, forward)) {
            ++res.failures;
        }
    }
    return res;
}

// Adding a constant to all targets shifts both models' predictive means by
// that constant (1e-9) and leaves predictive stds unchanged (1e-9).
inline SuiteResult prediction_translation_equivariance(int cases = 100,
                                                       std::uint64_t seed = 9005) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(5, 10);
    std::uniform_int_distribution<int> deg(1, 3);
    std::uniform_real_distribution<double> target(0.0, 50.0);
    std::uniform_real_distribution<double> shift_dist(-1000.0, 1000.0);
    SuiteResult res{cases, 0};
    for (int c = 0; c < cases; ++c) {
        const int n = len(rng);
        std::vector<int> x(static_cast<std::size_t>(n));
        std::iota(x.begin(), x.end(), 0);
        const auto phi = models::build_features(x, deg(rng), c % 2 == 0);
        std::vector<double> y(static_cast<std::size_t>(n)), y2(static_cast<std::size_t>(n));
        const double shift = shift_dist(rng);
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] = target(rng);
            y2[i] = y[i] + shift;
        }

        bool ok = true;
        const auto close = [&](double got, double want, double tol) {
            return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
        };

        const auto b1 = models::brr_fit(phi, y);
        const auto b2 = models::brr_fit(phi, y2);
        const auto pb1 = models::brr_predict(b1, x);
        const auto pb2 = models::brr_predict(b2, x);

        // Equivariance is exact linear algebra once the kernel is fixed. A
        // slice of cases re-optimizes the kernel too; there the derivative-free
        // search may settle a few ulps apart on the two inputs, so that path
        // gets a correspondingly looser bound.
        models::GprOptions opt;
        opt.optimize = c % 5 == 0;
        opt.restarts = 2;
        opt.seed = 7;
        const double gpr_tol = opt.optimize ? 1e-6 : 1e-9;
        const auto g1 = models::gpr_fit(phi, y, models::KernelSpec{1.0, 1.0}, opt);
        const auto g2 = models::gpr_fit(phi, y2, models::KernelSpec{1.0, 1.0}, opt);
        const auto pg1 = models::gpr_predict(g1, x);
        const auto pg2 = models::gpr_predict(g2, x);

        for (std::size_t i = 0; i < y.size() && ok; ++i) {
            ok = close(pb2.mean[i], pb1.mean[i] + shift, 1e-9) &&
                 close(pb2.std[i], pb1.std[i], 1e-9) &&
                 close(pg2.mean[i], pg1.mean[i] + shift, gpr_tol) &&
                 close(pg2.std[i], pg1.std[i], gpr_tol);
        }
        if (!ok) {
            ++res.failures;
        }
    }
    return res;
}

// Serializing a table and re-parsing it reproduces the table exactly.
inline SuiteResult ingest_round_trip(int cases = 100, std::uint64_t seed = 9006) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> n_dates(1, 40);
    std::uniform_int_distribution<int> n_rows(0, 5);
    std::uniform_int_distribution<std::int64_t> count(0, 9000000);
    std::uniform_real_distribution<double> coord(-90.0, 90.0);
    const std::vector<std::string> countries{"India",   "Korea, South",      "Australia",
                                             "utopia",  "Cote d'Ivoire",     "Saint \"Q\" Isle",
                                             "Germany", "Taiwan*"};
    const std::vector<std::string> provinces{"", "New South Wales", "Hubei", "Isle, Of Comma"};
    SuiteResult res{cases, 0};
    for (int c = 0; c < cases; ++c) {
        ingest::RegionTimeSeriesTable table;
        const int nd = n_dates(rng);
        const Date start = parse_mdy("1/22/20") + std::chrono::days{c % 200};
        for (int i = 0; i < nd; ++i) {
            table.dates.push_back(start + std::chrono::days{i});
        }
        const int nr = n_rows(rng);
        for (int r = 0; r < nr; ++r) {
            ingest::RegionRow row;
            row.province = provinces[std::size_t(rng() % provinces.size())];
            row.country = countries[std::size_t(rng() % countries.size())];
            row.latitude = coord(rng);
            row.longitude = coord(rng);
            for (int i = 0; i < nd; ++i) {
                row.counts.push_back(count(rng));
            }
            table.rows.push_back(std::move(row));
        }
        const auto reparsed = ingest::parse_jhu_csv(ingest::write_jhu_csv(table));
        if (!(reparsed == table)) {
            ++res.failures;
        }
    }
    return res;
}

// Province summation commutes with row order.
inline SuiteResult extraction_order_independent(int cases = 100, std::uint64_t seed = 9007) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> n_dates(1, 20);
    std::uniform_int_distribution<int> n_rows(1, 6);
    std::uniform_int_distribution<std::int64_t> count(0, 100000);
    SuiteResult res{cases, 0};
    for (int c = 0; c < cases; ++c) {
        const int nd = n_dates(rng);
        ingest::RegionTimeSeriesTable table;
        const Date start = parse_mdy("1/22/20");
        for (int i = 0; i < nd; ++i) {
            table.dates.push_back(start + std::chrono::days{i});
        }
        const int nr = n_rows(rng);
        for (int r = 0; r < nr; ++r) {
            ingest::RegionRow row;
            row.province = "P" + std::to_string(r);
            row.country = "Atlantis";
            for (int i = 0; i < nd; ++i) {
                row.counts.push_back(count(rng));
            }
            table.rows.push_back(std::move(row));
        }
        const auto a = ingest::extract_country_series(table, "Atlantis",
                                                      ingest::Metric::Confirmed);
        std::shuffle(table.rows.begin(), table.rows.end(), rng);
        const auto b = ingest::extract_country_series(table, "atlantis",
                                                      ingest::Metric::Confirmed);
        if (a.values != b.values) {
            ++res.failures;
        }
    }
    return res;
}

} // namespace epicast::properties

#endif // EPICAST_TESTS_PROPERTY_SUITES_HPP
