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

#ifndef EPICAST_CLI_HPP
#define EPICAST_CLI_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "epicast/evaluate.hpp"

namespace epicast::cli {

// Stable exit codes; stdout carries data/summaries, stderr diagnostics.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitCountry = 3;
inline constexpr int kExitModel = 4;
inline constexpr int kExitIo = 5;

struct RunConfig {
    std::string data_path; // CSV file, or directory holding the canonical JHU file names
    std::string country;
    ingest::Metric metric = ingest::Metric::Confirmed;
    int window_days = 100;
    std::set<evaluate::Regressor> regressors{evaluate::Regressor::BRR, evaluate::Regressor::GPR};
    int degree = 3;
    bool standardize = true;
    bool optimize_gpr = true;
    std::uint64_t seed = 42;
    std::string output_dir;
};

/// Resolve --data to a concrete CSV path: directories map to the canonical
/// per-metric JHU file name inside them.
std::string resolve_data_file(const std::string& data_path, ingest::Metric metric);

/// Load, parse, extract and trim in one step (the shared command front half).
ingest::CaseSeries load_series(const RunConfig& config, ingest::Metric metric);

int cmd_inspect(const RunConfig& config);
int cmd_forecast(const RunConfig& config);
int cmd_compare(const RunConfig& config);

/// Full argv entry point used by the epicast binary and by tests; returns the
/// process exit code.
int run(const std::vector<std::string>& args);

} // namespace epicast::cli

#endif // EPICAST_CLI_HPP
