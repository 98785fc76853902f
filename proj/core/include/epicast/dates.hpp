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

#ifndef EPICAST_DATES_HPP
#define EPICAST_DATES_HPP

#include <chrono>
#include <string>
#include <string_view>

namespace epicast {

/// Calendar dates are plain UTC days; no time zones anywhere in the pipeline.
using Date = std::chrono::sys_days;

/// Parse the JHU header date format `m/d/yy` (two-digit year mapped to 2000+yy).
Date parse_mdy(std::string_view text);

/// Format as `m/d/yy`, the JHU header style.
std::string to_mdy(Date d);

/// Format as ISO `yyyy-mm-dd`.
std::string to_iso(Date d);

} // namespace epicast

#endif // EPICAST_DATES_HPP
