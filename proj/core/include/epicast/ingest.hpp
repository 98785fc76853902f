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

#ifndef EPICAST_INGEST_HPP
#define EPICAST_INGEST_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "epicast/dates.hpp"
#include "epicast/errors.hpp"

namespace epicast::ingest {

enum class Metric { Confirmed, Deaths };

std::string metric_name(Metric m);

/// One region row of a JHU CSSE global time-series file.
struct RegionRow {
    std::string province; // empty when the row covers the whole country
    std::string country;
    double latitude = 0.0;
    double longitude = 0.0;
    std::vector<std::int64_t> counts; // one cumulative count per header date
};

struct RegionTimeSeriesTable {
    std::vector<RegionRow> rows;
    std::vector<Date> dates; // strictly increasing, consecutive calendar days

    bool operator==(const RegionTimeSeriesTable&) const = default;
};

inline bool operator==(const RegionRow& a, const RegionRow& b) {
    return a.province == b.province && a.country == b.country &&
           a.latitude == b.latitude && a.longitude == b.longitude && a.counts == b.counts;
}

/// A dated cumulative count series for one country.
/// After trim_to_outbreak the first value is >= 1 (series starts at the first
/// detected case); before trimming it may lead with zeros.
struct CaseSeries {
    std::string country;
    Metric metric = Metric::Confirmed;
    Date start_date{};
    std::vector<std::int64_t> values;
};

/// Parse a JHU CSSE global time-series CSV.
///
/// The header must start with `Province/State,Country/Region,Lat,Long` followed
/// by one `m/d/yy` column per day. Quoted fields (country names with commas)
/// are handled. Throws MalformedHeader, RaggedRow or NonNumericCount.
RegionTimeSeriesTable parse_jhu_csv(std::string_view raw_text);

/// Serialize back to the same CSV layout; parse(write(t)) == t.
std::string write_jhu_csv(const RegionTimeSeriesTable& table);

/// Sum all province rows of `country` (exact, case-insensitive match) into one
/// untrimmed series starting at the table's first date. Throws UnknownCountry.
CaseSeries extract_country_series(const RegionTimeSeriesTable& table,
                                  std::string_view country, Metric metric);

/// Drop leading zero days and keep at most `window_days` entries from the
/// first index with value >= 1. Throws AllZero when no case ever appears.
CaseSeries trim_to_outbreak(const CaseSeries& series, int window_days);

} // namespace epicast::ingest

#endif // EPICAST_INGEST_HPP
