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

#include "epicast/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>

namespace epicast::ingest {

namespace {

// RFC-4180-style field splitting: quoted fields may contain commas, doubled
// quotes escape a quote.
std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        if (end == text.size()) {
            break;
        }
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    return lines;
}

std::int64_t parse_count(const std::string& cell, std::size_t row, std::size_t col) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    const bool full = ec == std::errc{} && ptr == cell.data() + cell.size();
    if (cell.empty() || !full || value < 0) {
        throw NonNumericCount("row " + std::to_string(row) + ", column " + std::to_string(col) +
                              ": '" + cell + "' is not a non-negative integer");
    }
    return value;
}

// Lat/Long are informational; empty or junk cells degrade to 0 rather than
// failing the whole file (upstream snapshots contain blank coordinates).
double parse_coord(const std::string& cell) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        return 0.0;
    }
    return value;
}

std::string format_coord(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string quote_if_needed(const std::string& field) {
    if (field.find(',') == std::string::npos && field.find('"') == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') {
            out += "\"\"";
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string lowercase(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return out;
}

} // namespace

std::string metric_name(Metric m) {
    return m == Metric::Confirmed ? "confirmed" : "deaths";
}

RegionTimeSeriesTable parse_jhu_csv(std::string_view raw_text) {
    const auto lines = split_lines(raw_text);
    if (lines.empty()) {
        throw MalformedHeader("empty input");
    }
    const auto header = split_csv_line(lines[0]);
    static constexpr const char* kFixed[4] = {"Province/State", "Country/Region", "Lat", "Long"};
    if (header.size() < 5) {
        throw MalformedHeader("header has no date columns");
    }
    for (std::size_t i = 0; i < 4; ++i) {
        if (header[i] != kFixed[i]) {
            throw MalformedHeader("header column " + std::to_string(i) + " is '" + header[i] +
                                  "', expected '" + kFixed[i] + "'");
        }
    }

    RegionTimeSeriesTable table;
    table.dates.reserve(header.size() - 4);
    for (std::size_t i = 4; i < header.size(); ++i) {
        table.dates.push_back(parse_mdy(header[i]));
    }
    for (std::size_t i = 1; i < table.dates.size(); ++i) {
        if (table.dates[i] != table.dates[i - 1] + std::chrono::days{1}) {
            throw MalformedHeader("header dates are not consecutive calendar days at column " +
                                  std::to_string(4 + i));
        }
    }

    for (std::size_t r = 1; r < lines.size(); ++r) {
        if (lines[r].empty()) {
            continue;
        }
        const auto cells = split_csv_line(lines[r]);
        if (cells.size() != header.size()) {
            throw RaggedRow("row " + std::to_string(r) + " has " + std::to_string(cells.size()) +
                            " fields, header has " + std::to_string(header.size()));
        }
        RegionRow row;
        row.province = cells[0];
        row.country = cells[1];
        row.latitude = parse_coord(cells[2]);
        row.longitude = parse_coord(cells[3]);
        row.counts.reserve(table.dates.size());
        for (std::size_t c = 4; c < cells.size(); ++c) {
            row.counts.push_back(parse_count(cells[c], r, c));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string write_jhu_csv(const RegionTimeSeriesTable& table) {
    std::string out = "Province/State,Country/Region,Lat,Long";
    for (const Date d : table.dates) {
        out += ',';
        out += to_mdy(d);
    }
    out += '\n';
    for (const RegionRow& row : table.rows) {
        out += quote_if_needed(row.province);
        out += ',';
        out += quote_if_needed(row.country);
        out += ',';
        out += format_coord(row.latitude);
        out += ',';
        out += format_coord(row.longitude);
        for (const std::int64_t v : row.counts) {
            out += ',';
            out += std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

CaseSeries extract_country_series(const RegionTimeSeriesTable& table, std::string_view country,
                                  Metric metric) {
    const std::string wanted = lowercase(country);
    CaseSeries series;
    series.metric = metric;
    series.values.assign(table.dates.size(), 0);
    bool found = false;
    for (const RegionRow& row : table.rows) {
        if (lowercase(row.country) != wanted) {
            continue;
        }
        found = true;
        series.country = row.country; // canonical casing from the file
        for (std::size_t i = 0; i < row.counts.size(); ++i) {
            series.values[i] += row.counts[i];
        }
    }
    if (!found) {
        throw UnknownCountry("no row matches country '" + std::string(country) + "'");
    }
    if (!table.dates.empty()) {
        series.start_date = table.dates.front();
    }
    return series;
}

CaseSeries trim_to_outbreak(const CaseSeries& series, int window_days) {
    if (window_days < 1) {
        throw std::invalid_argument("window_days must be positive");
    }
    const auto first = std::find_if(series.values.begin(), series.values.end(),
                                    [](std::int64_t v) { return v >= 1; });
    if (first == series.values.end()) {
        throw AllZero("series for '" + series.country + "' has no nonzero value");
    }
    const auto offset = std::size_t(first - series.values.begin());
    const std::size_t len = std::min<std::size_t>(std::size_t(window_days),
                                                  series.values.size() - offset);
    CaseSeries out;
    out.country = series.country;
    out.metric = series.metric;
    out.start_date = series.start_date + std::chrono::days{long(offset)};
    out.values.assign(first, first + long(len));
    return out;
}

} // namespace epicast::ingest
