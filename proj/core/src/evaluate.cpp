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

#include "epicast/evaluate.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "json.hpp"

namespace epicast::evaluate {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0, Clock::time_point t1) {
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

double round4(double v) {
    return std::round(v * 1e4) / 1e4;
}

std::string format_ms(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// Shortest round-trip representation, so identical values always serialize
// identically.
std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

std::string regressor_name(Regressor r) {
    return r == Regressor::BRR ? "BRR" : "GPR";
}

SplitSpec SplitSpec::for_metric(Metric m) {
    return SplitSpec{m == Metric::Confirmed ? 0.67 : 0.75};
}

std::pair<CaseSeries, CaseSeries> chrono_split(const CaseSeries& series, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0) || !(spec.train_fraction < 1.0)) {
        throw std::invalid_argument("train_fraction must lie strictly between 0 and 1");
    }
    const std::size_t n = series.values.size();
    if (n < 4) {
        throw TooShort("series has " + std::to_string(n) + " points, need at least 4");
    }
    const auto n_train = std::size_t(std::floor(double(n) * spec.train_fraction));
    if (n_train < 2 || n - n_train < 1) {
        throw TooShort("split of " + std::to_string(n) + " points at fraction " +
                       std::to_string(spec.train_fraction) + " leaves train=" +
                       std::to_string(n_train) + ", test=" + std::to_string(n - n_train));
    }
    CaseSeries train{series.country, series.metric, series.start_date,
                     {series.values.begin(), series.values.begin() + long(n_train)}};
    CaseSeries test{series.country, series.metric,
                    series.start_date + std::chrono::days{long(n_train)},
                    {series.values.begin() + long(n_train), series.values.end()}};
    return {std::move(train), std::move(test)};
}

double rmse(std::span<const double> pred, std::span<const double> actual) {
    if (pred.empty() || actual.empty()) {
        throw EmptyInput("rmse of empty vectors");
    }
    if (pred.size() != actual.size()) {
        throw DimensionMismatch("rmse: lengths " + std::to_string(pred.size()) + " vs " +
                                std::to_string(actual.size()));
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - actual[i];
        acc += d * d;
    }
    return std::sqrt(acc / double(pred.size()));
}

std::pair<std::int64_t, std::int64_t> bounds(const CaseSeries& test) {
    if (test.values.empty()) {
        throw EmptyInput("bounds of an empty series");
    }
    const auto [lo, hi] = std::minmax_element(test.values.begin(), test.values.end());
    return {*lo, *hi};
}

ForecastReport timed_run(const CaseSeries& series, Regressor regressor, const SplitSpec& split,
                         const ModelConfig& config) {
    auto [train, test] = chrono_split(series, split);
    const std::size_t n_train = train.values.size();
    const std::size_t n = series.values.size();

    std::vector<int> x_train(n_train);
    std::iota(x_train.begin(), x_train.end(), 0);
    std::vector<double> y_train(train.values.begin(), train.values.end());
    const models::DesignMatrix phi = models::build_features(x_train, config.degree,
                                                            config.standardize);
    std::vector<int> x_all(n);
    std::iota(x_all.begin(), x_all.end(), 0);

    ForecastReport report;
    report.regressor = regressor;
    report.metric = series.metric;
    report.train_size = n_train;
    report.start_date = series.start_date;
    report.country = series.country;
    report.actuals.assign(series.values.begin(), series.values.end());

    if (regressor == Regressor::BRR) {
        const auto t0 = Clock::now();
        const models::BRRModel model = models::brr_fit(phi, y_train, config.brr);
        const auto t1 = Clock::now();
        const auto t2 = Clock::now();
        report.predictions = models::brr_predict(model, x_all);
        const auto t3 = Clock::now();
        report.train_time_ms = elapsed_ms(t0, t1);
        report.predict_time_ms = elapsed_ms(t2, t3);
    } else {
        models::GprOptions options;
        options.optimize = config.optimize_gpr;
        options.restarts = config.restarts;
        options.seed = config.seed;
        const auto t0 = Clock::now();
        const models::GPRModel model = models::gpr_fit(phi, y_train, config.gpr_init, options);
        const auto t1 = Clock::now();
        const auto t2 = Clock::now();
        report.predictions = models::gpr_predict(model, x_all);
        const auto t3 = Clock::now();
        report.train_time_ms = elapsed_ms(t0, t1);
        report.predict_time_ms = elapsed_ms(t2, t3);
    }

    const std::span<const double> test_pred(report.predictions.mean.data() + n_train, n - n_train);
    const std::span<const double> test_actual(report.actuals.data() + n_train, n - n_train);
    report.rmse = rmse(test_pred, test_actual);
    std::tie(report.test_lower_bound, report.test_upper_bound) = bounds(test);
    return report;
}

std::string report_to_json(const ForecastReport& report) {
    nlohmann::json j;
    j["regressor"] = regressor_name(report.regressor);
    j["metric"] = ingest::metric_name(report.metric);
    j["country"] = report.country;
    j["rmse"] = report.rmse;
    j["test_lower_bound"] = report.test_lower_bound;
    j["test_upper_bound"] = report.test_upper_bound;
    j["train_time_ms"] = round4(report.train_time_ms);
    j["predict_time_ms"] = round4(report.predict_time_ms);
    j["n_train"] = report.train_size;
    j["n_total"] = report.actuals.size();
    j["start_date"] = to_iso(report.start_date);
    j["negative_variance_clamps"] = report.predictions.negative_variance_clamps;
    j["predictions"]["mean"] = report.predictions.mean;
    j["predictions"]["std"] = report.predictions.std;
    j["actuals"] = report.actuals;
    return j.dump(2) + "\n";
}

std::string reports_to_csv(std::span<const ForecastReport> reports) {
    std::string out = "regressor,metric,train_ms,predict_ms,rmse,lower,upper\n";
    for (const ForecastReport& r : reports) {
        out += regressor_name(r.regressor) + "," + ingest::metric_name(r.metric) + "," +
               format_ms(r.train_time_ms) + "," + format_ms(r.predict_time_ms) + "," +
               format_double(r.rmse) + "," + std::to_string(r.test_lower_bound) + "," +
               std::to_string(r.test_upper_bound) + "\n";
    }
    return out;
}

std::string curve_to_csv(const ForecastReport& report) {
    std::string out = "day_index,date,actual,pred_mean,pred_std,segment\n";
    for (std::size_t i = 0; i < report.actuals.size(); ++i) {
        out += std::to_string(i) + "," + to_iso(report.start_date + std::chrono::days{long(i)}) +
               "," + format_double(report.actuals[i]) + "," +
               format_double(report.predictions.mean[i]) + "," +
               format_double(report.predictions.std[i]) + "," +
               (i < report.train_size ? "train" : "test") + "\n";
    }
    return out;
}

} // namespace epicast::evaluate
