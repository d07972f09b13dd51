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
#ifndef SNORING_GIT_MINER_H_
#define SNORING_GIT_MINER_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "snoring/history.h"

namespace snoring {

// Reads the first-parent mainline of HEAD with rename detection at 50%
// similarity, plus every tag whose name matches `tag_pattern` (ECMAScript
// regex, searched anywhere in the name) as a release. A release date is the
// committer date of the tagged commit.
//
// Throws InputError when the repository cannot be read or fewer than two
// releases match. Releases sharing a date keep the first name in version
// order; dates out of version order are re-sorted by date. Both cases are
// recorded in the history's warnings.
ProjectHistory ingest_history(const std::filesystem::path& repo,
                              const std::string& tag_pattern = ".*");

// Parses the output of the `git log` invocation used by ingest_history.
// Exposed for tests.
std::vector<CommitRecord> parse_git_log(std::string_view raw);

// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view text);

}  // namespace snoring

#endif  // SNORING_GIT_MINER_H_
