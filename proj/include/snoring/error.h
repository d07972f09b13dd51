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
#ifndef SNORING_ERROR_H_
#define SNORING_ERROR_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace snoring {

// Bad or unreadable input: missing files, malformed records, violated
// preconditions. The CLI maps it to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input is well formed but carries too little information for the requested
// computation (single-label data, all-zero differences, too few releases).
// The CLI maps it to exit code 2.
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-fatal findings collected while processing data.
using Warnings = std::vector<std::string>;

}  // namespace snoring

#endif  // SNORING_ERROR_H_
