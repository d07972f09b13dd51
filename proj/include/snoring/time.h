// Copyright 2026 The Snoring Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef SNORING_TIME_H_
#define SNORING_TIME_H_

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace snoring {

// UTC instant with one-second resolution.
using Instant = std::chrono::sys_seconds;

inline Instant from_unix(std::int64_t seconds) {
  return Instant{std::chrono::seconds{seconds}};
}

inline std::int64_t to_unix(Instant t) { return t.time_since_epoch().count(); }

// Parses ISO-8601 timestamps as produced by Jira and git, e.g.
// "2017-03-01T10:00:00.000+0000", "2017-03-01T10:00:00Z",
// "2017-03-01 10:00:00 +02:00" or a bare date "2017-03-01".
// Fractional seconds are truncated. Throws InputError on malformed text.
Instant parse_iso8601(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_iso8601(Instant t);

inline double weeks_between(Instant from, Instant to) {
  return static_cast<double>(to_unix(to) - to_unix(from)) / (7.0 * 86400.0);
}

}  // namespace snoring

#endif  // SNORING_TIME_H_
