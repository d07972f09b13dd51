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
#ifndef SNORING_CSV_H_
#define SNORING_CSV_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace snoring {

// RFC 4180 style: fields containing a comma, quote or newline are quoted.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Reads one record; returns false at end of input. Quoted fields may span
// lines.
bool read_csv_row(std::istream& in, std::vector<std::string>& fields);

// "%.9g", with NaN written as "nan".
std::string format_real(double value);

// Shortest text that parses back to exactly `value` ("%.17g" at most).
std::string format_exact(double value);

double parse_real(std::string_view text);

}  // namespace snoring

#endif  // SNORING_CSV_H_
