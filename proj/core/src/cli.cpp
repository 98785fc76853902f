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

#include "epicast/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

namespace epicast::cli {

namespace fs = std::filesystem;

namespace {

// Input-side read failures map to the parse exit code; IoError stays reserved
// for output writing.
class InputFileError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputFileError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

std::string lower_name(evaluate::Regressor r) {
    std::string name = evaluate::regressor_name(r);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return name;
}

std::set<evaluate::Regressor> parse_regressors(const std::string& csv) {
    std::set<evaluate::Regressor> out;
    std::stringstream stream(csv);
    std::string token;
    while (std::getline(stream, token, ',')) {
        std::transform(token.begin(), token.end(), token.begin(),
                       [](unsigned char c) { return char(std::tolower(c)); });
        if (token.empty()) {
            continue;
        }
        if (token == "brr") {
            out.insert(evaluate::Regressor::BRR);
        } else if (token == "gpr") {
            out.insert(evaluate::Regressor::GPR);
        } else {
            throw CLI::ValidationError("--regressors", "unknown regressor '" + token + "'");
        }
    }
    return out;
}

evaluate::ModelConfig model_config(const RunConfig& config) {
    evaluate::ModelConfig mc;
    mc.degree = config.degree;
    mc.standardize = config.standardize;
    mc.optimize_gpr = config.optimize_gpr;
    mc.seed = config.seed;
    return mc;
}

void write_run_outputs(const RunConfig& config,
                       const std::vector<evaluate::ForecastReport>& reports) {
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + config.output_dir + "': " +
                      ec.message());
    }
    const fs::path out_dir(config.output_dir);
    for (const auto& report : reports) {
        const std::string stem =
            lower_name(report.regressor) + "_" + ingest::metric_name(report.metric);
        write_file(out_dir / ("report_" + stem + ".json"), evaluate::report_to_json(report));
        write_file(out_dir / ("curve_" + stem + ".csv"), evaluate::curve_to_csv(report));
    }
    write_file(out_dir / "report.csv", evaluate::reports_to_csv(reports));
}

void print_summary(const std::vector<evaluate::ForecastReport>& reports) {
    for (const auto& r : reports) {
        std::cout << evaluate::regressor_name(r.regressor) << " " << ingest::metric_name(r.metric)
                  << ": rmse=" << r.rmse << " bounds=[" << r.test_lower_bound << ","
                  << r.test_upper_bound << "]"
                  << " train_ms=" << r.train_time_ms << " predict_ms=" << r.predict_time_ms
                  << "\n";
    }
}

void add_common_options(CLI::App* sub, RunConfig& config, std::string& config_file) {
    sub->add_option("--config", config_file, "flat key=value configuration file");
    sub->add_option("--data", config.data_path,
                    "time-series CSV, or a directory with the canonical JHU file names")
        ->envname("EPICAST_DATA");
    sub->add_option("--country", config.country, "country name, matched case-insensitively");
}

bool parse_bool(const std::string& raw, const std::string& key) {
    if (raw == "true" || raw == "1" || raw == "yes") {
        return true;
    }
    if (raw == "false" || raw == "0" || raw == "no") {
        return false;
    }
    throw CLI::ValidationError(key, "expected a boolean, got '" + raw + "'");
}

ingest::Metric parse_metric(std::string raw) {
    std::transform(raw.begin(), raw.end(), raw.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    if (raw == "confirmed") {
        return ingest::Metric::Confirmed;
    }
    if (raw == "deaths") {
        return ingest::Metric::Deaths;
    }
    throw CLI::ValidationError("metric", "expected confirmed|deaths, got '" + raw + "'");
}

// Flat key=value file; command-line flags take precedence over file entries,
// file entries over built-in defaults. Returns the keys actually applied.
std::set<std::string> apply_config_file(const std::string& path, CLI::App* sub,
                                        RunConfig& config, bool& no_standardize,
                                        bool& no_optimize_gpr, std::string& regressors) {
    std::set<std::string> applied;
    std::ifstream in(path);
    if (!in) {
        throw CLI::ValidationError("--config", "cannot read '" + path + "'");
    }
    const auto overridden = [&](const std::string& flag) {
        const CLI::Option* opt = sub->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw CLI::ValidationError("--config", "line " + std::to_string(line_no) +
                                                       " is not key=value: '" + line + "'");
        }
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        const auto apply = [&](const std::string& flag, auto&& setter) {
            if (!overridden(flag)) {
                setter();
                applied.insert(key);
            }
        };
        if (key == "data") {
            apply("--data", [&] { config.data_path = value; });
        } else if (key == "country") {
            apply("--country", [&] { config.country = value; });
        } else if (key == "metric") {
            apply("--metric", [&] { config.metric = parse_metric(value); });
        } else if (key == "window") {
            apply("--window", [&] { config.window_days = std::stoi(value); });
        } else if (key == "degree") {
            apply("--degree", [&] { config.degree = std::stoi(value); });
        } else if (key == "seed") {
            apply("--seed", [&] { config.seed = std::stoull(value); });
        } else if (key == "out") {
            apply("--out", [&] { config.output_dir = value; });
        } else if (key == "regressors") {
            apply("--regressors", [&] { regressors = value; });
        } else if (key == "standardize") {
            apply("--no-standardize", [&] { no_standardize = !parse_bool(value, key); });
        } else if (key == "optimize-gpr") {
            apply("--no-optimize-gpr", [&] { no_optimize_gpr = !parse_bool(value, key); });
        } else {
            throw CLI::ValidationError("--config", "unknown key '" + key + "'");
        }
    }
    return applied;
}

void add_model_options(CLI::App* sub, RunConfig& config, bool& no_standardize,
                       bool& no_optimize_gpr, std::string& regressors) {
    sub->add_option("--degree", config.degree, "polynomial degree of the day-index features")
        ->check(CLI::Range(1, 16))
        ->capture_default_str();
    sub->add_flag("--no-standardize", no_standardize, "use raw day-index powers as features");
    sub->add_flag("--no-optimize-gpr", no_optimize_gpr,
                  "keep the initial kernel instead of maximizing the marginal likelihood");
    sub->add_option("--window", config.window_days, "days kept from the first detected case")
        ->check(CLI::Range(4, 100000))
        ->capture_default_str();
    sub->add_option("--seed", config.seed, "seed for the kernel-optimizer restarts")
        ->capture_default_str();
    sub->add_option("--regressors", regressors, "comma list out of: brr,gpr")
        ->capture_default_str();
    sub->add_option("--out", config.output_dir, "output directory");
}

} // namespace

std::string resolve_data_file(const std::string& data_path, ingest::Metric metric) {
    const fs::path p(data_path);
    if (fs::is_directory(p)) {
        const std::string name = metric == ingest::Metric::Confirmed
                                     ? "time_series_covid19_confirmed_global.csv"
                                     : "time_series_covid19_deaths_global.csv";
        return (p / name).string();
    }
    return data_path;
}

ingest::CaseSeries load_series(const RunConfig& config, ingest::Metric metric) {
    const std::string file = resolve_data_file(config.data_path, metric);
    const auto table = ingest::parse_jhu_csv(read_file(file));
    const auto raw = ingest::extract_country_series(table, config.country, metric);
    return ingest::trim_to_outbreak(raw, config.window_days);
}

int cmd_inspect(const RunConfig& config) {
    const std::string file = resolve_data_file(config.data_path, config.metric);
    const auto table = ingest::parse_jhu_csv(read_file(file));
    const auto raw = ingest::extract_country_series(table, config.country, config.metric);
    const auto trimmed = ingest::trim_to_outbreak(raw, config.window_days);
    const auto trim_offset = (trimmed.start_date - raw.start_date).count();

    std::cout << "country: " << trimmed.country << "\n"
              << "metric: " << ingest::metric_name(config.metric) << "\n"
              << "table dates: " << to_iso(table.dates.front()) << " .. "
              << to_iso(table.dates.back()) << " (" << table.dates.size() << " days)\n"
              << "trim point: day " << trim_offset << " of the raw series\n"
              << "series length: " << trimmed.values.size() << "\n"
              << "start date: " << to_iso(trimmed.start_date) << "\n"
              << "first value: " << trimmed.values.front() << "\n"
              << "last value: " << trimmed.values.back() << "\n";
    return kExitOk;
}

int cmd_forecast(const RunConfig& config) {
    const auto series = load_series(config, config.metric);
    const auto split = evaluate::SplitSpec::for_metric(config.metric);
    const auto mc = model_config(config);

    std::vector<evaluate::ForecastReport> reports;
    for (const auto regressor : config.regressors) {
        reports.push_back(evaluate::timed_run(series, regressor, split, mc));
    }
    write_run_outputs(config, reports);
    print_summary(reports);
    return kExitOk;
}

int cmd_compare(const RunConfig& config) {
    const auto mc = model_config(config);
    std::vector<evaluate::ForecastReport> reports;
    for (const auto metric : {ingest::Metric::Confirmed, ingest::Metric::Deaths}) {
        const auto series = load_series(config, metric);
        const auto split = evaluate::SplitSpec::for_metric(metric);
        for (const auto regressor : config.regressors) {
            reports.push_back(evaluate::timed_run(series, regressor, split, mc));
        }
    }
    write_run_outputs(config, reports);
    print_summary(reports);
    return kExitOk;
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"epicast: epidemic time-series forecasting with Bayesian ridge and "
                 "Gaussian process regressors"};
    app.require_subcommand(1);

    RunConfig config;
    bool no_standardize = false;
    bool no_optimize_gpr = false;
    std::string regressors = "brr,gpr";
    std::string config_file;

    const std::map<std::string, ingest::Metric> metric_map{
        {"confirmed", ingest::Metric::Confirmed}, {"deaths", ingest::Metric::Deaths}};

    CLI::App* inspect = app.add_subcommand("inspect", "summarize one country series");
    add_common_options(inspect, config, config_file);
    inspect->add_option("--metric", config.metric, "confirmed|deaths")
        ->transform(CLI::CheckedTransformer(metric_map, CLI::ignore_case));
    inspect
        ->add_option("--window", config.window_days, "days kept from the first detected case")
        ->check(CLI::Range(4, 100000))
        ->capture_default_str();

    CLI::App* forecast =
        app.add_subcommand("forecast", "fit the regressors on one metric and emit reports");
    add_common_options(forecast, config, config_file);
    forecast->add_option("--metric", config.metric, "confirmed|deaths")
        ->transform(CLI::CheckedTransformer(metric_map, CLI::ignore_case));
    add_model_options(forecast, config, no_standardize, no_optimize_gpr, regressors);

    CLI::App* compare = app.add_subcommand(
        "compare", "full four-row comparison: both regressors on confirmed (0.67) and deaths (0.75)");
    add_common_options(compare, config, config_file);
    add_model_options(compare, config, no_standardize, no_optimize_gpr, regressors);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("epicast");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App* active = inspect;
    if (app.got_subcommand(forecast)) {
        active = forecast;
    } else if (app.got_subcommand(compare)) {
        active = compare;
    }
    const bool metric_given = active->get_option_no_throw("--metric") != nullptr &&
                              active->get_option_no_throw("--metric")->count() > 0;
    bool metric_in_config = false;

    try {
        if (!config_file.empty()) {
            const auto applied = apply_config_file(config_file, active, config, no_standardize,
                                                   no_optimize_gpr, regressors);
            metric_in_config = applied.contains("metric");
        }
        config.regressors = parse_regressors(regressors);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: bad value in config file: " << e.what() << "\n";
        return kExitUsage;
    }

    config.standardize = !no_standardize;
    config.optimize_gpr = !no_optimize_gpr;

    if (config.data_path.empty()) {
        std::cerr << "error: no data file given (use --data or EPICAST_DATA)\n";
        return kExitUsage;
    }
    if (config.country.empty()) {
        std::cerr << "error: --country is required\n";
        return kExitUsage;
    }
    if (config.window_days < 4 || config.degree < 1) {
        std::cerr << "error: window must be >= 4 and degree >= 1\n";
        return kExitUsage;
    }
    if (active != compare && !metric_given && !metric_in_config) {
        std::cerr << "error: --metric is required\n";
        return kExitUsage;
    }
    if (active != inspect && config.output_dir.empty()) {
        std::cerr << "error: --out is required\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(inspect)) {
            return cmd_inspect(config);
        }
        if (config.regressors.empty()) {
            std::cerr << "error: --regressors selected no regressor\n";
            return kExitUsage;
        }
        if (app.got_subcommand(forecast)) {
            return cmd_forecast(config);
        }
        return cmd_compare(config);
    } catch (const InputFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const MalformedHeader& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const RaggedRow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NonNumericCount& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const UnknownCountry& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCountry;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModel;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModel;
    }
}

} // namespace epicast::cli
