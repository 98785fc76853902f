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

#include "epicast/dates.hpp"

#include <charconv>

#include "epicast/errors.hpp"

namespace epicast {

namespace {

int parse_int_field(std::string_view text, std::string_view what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw MalformedHeader("invalid " + std::string(what) + " in date '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

Date parse_mdy(std::string_view text) {
    const auto first = text.find('/');
    const auto second = text.find('/', first == std::string_view::npos ? first : first + 1);
    if (first == std::string_view::npos || second == std::string_view::npos) {
        throw MalformedHeader("expected m/d/yy date, got '" + std::string(text) + "'");
    }
    const int m = parse_int_field(text.substr(0, first), "month");
    const int d = parse_int_field(text.substr(first + 1, second - first - 1), "day");
    int y = parse_int_field(text.substr(second + 1), "year");
    if (y < 100) {
        y += 2000;
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) {
        throw MalformedHeader("invalid calendar date '" + std::string(text) + "'");
    }
    return std::chrono::sys_days{ymd};
}

std::string to_mdy(Date d) {
    const std::chrono::year_month_day ymd{d};
    return std::to_string(unsigned(ymd.month())) + "/" + std::to_string(unsigned(ymd.day())) + "/" +
           std::to_string(int(ymd.year()) % 100);
}

std::string to_iso(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

} // namespace epicast
