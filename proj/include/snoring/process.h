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
#ifndef SNORING_PROCESS_H_
#define SNORING_PROCESS_H_

#include <string>
#include <utility>
#include <vector>

namespace snoring {

struct ProcessResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Runs argv[0] from PATH without a shell. `env` entries are added to the
// child's environment. Never throws on a nonzero exit; throws InputError
// when the program cannot be started.
ProcessResult run_process(
    const std::vector<std::string>& argv,
    const std::vector<std::pair<std::string, std::string>>& env = {});

}  // namespace snoring

#endif  // SNORING_PROCESS_H_
