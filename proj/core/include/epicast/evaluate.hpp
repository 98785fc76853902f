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

#ifndef EPICAST_EVALUATE_HPP
#define EPICAST_EVALUATE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "epicast/ingest.hpp"
#include "epicast/models.hpp"

namespace epicast::evaluate {

using ingest::CaseSeries;
using ingest::Metric;

enum class Regressor { BRR, GPR };

std::string regressor_name(Regressor r);

/// Chronological train fraction; no shuffling anywhere.
struct SplitSpec {
    double train_fraction = 0.67;

    /// Default fractions per metric: 0.67 for confirmed cases, 0.75 for deaths.
    static SplitSpec for_metric(Metric m);
};

/// First floor(n * fraction) points train, remainder tests; order preserved.
/// Throws TooShort when fewer than 4 points or the split leaves train < 2 or
/// test < 1.
std::pair<CaseSeries, CaseSeries> chrono_split(const CaseSeries& series, const SplitSpec& spec);

/// Root mean squared error; throws EmptyInput / DimensionMismatch.
double rmse(std::span<const double> pred, std::span<const double> actual);

/// (min, max) of the test values. Throws EmptyInput.
std::pair<std::int64_t, std::int64_t> bounds(const CaseSeries& test);

/// Everything needed to fit either regressor.
struct ModelConfig {
    int degree = 3;
    bool standardize = true;
    models::BrrConfig brr;
    bool optimize_gpr = true;
    models::KernelSpec gpr_init{1.0, 1.0};
    int restarts = 3;
    std::uint64_t seed = 42;
};

/// One comparison-table row plus the full-horizon trajectory for plotting.
struct ForecastReport {
    Regressor regressor = Regressor::BRR;
    Metric metric = Metric::Confirmed;
    double rmse = 0.0; // on the test segment only
    std::int64_t test_lower_bound = 0;
    std::int64_t test_upper_bound = 0;
    double train_time_ms = 0.0;
    double predict_time_ms = 0.0;
    models::Prediction predictions; // over train + test day indices
    std::vector<double> actuals;    // full series, same length as predictions
    std::size_t train_size = 0;
    Date start_date{};
    std::string country;
};

/// Split, fit on the train segment, predict over the full horizon and score
/// the test segment. Wall-clock times come from a monotonic clock wrapped
/// tightly around the fit and predict calls.
ForecastReport timed_run(const CaseSeries& series, Regressor regressor, const SplitSpec& split,
                         const ModelConfig& config);

/// One JSON object per report (deterministic key order, times rounded to
/// 4 decimals).
std::string report_to_json(const ForecastReport& report);

/// Combined comparison CSV: regressor,metric,train_ms,predict_ms,rmse,lower,upper
std::string reports_to_csv(std::span<const ForecastReport> reports);

/// Plot data: day_index,date,actual,pred_mean,pred_std,segment(train|test)
std::string curve_to_csv(const ForecastReport& report);

} // namespace epicast::evaluate

#endif // EPICAST_EVALUATE_HPP
