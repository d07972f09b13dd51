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
//
// `history.jsonl` cache: a header record (schema_version, release table,
// warnings) followed by one record per commit with fields id, ts, author,
// msg, parents and changes[].
#ifndef SNORING_HISTORY_IO_H_
#define SNORING_HISTORY_IO_H_

#include <filesystem>
#include <iosfwd>

#include "snoring/history.h"

namespace snoring {

inline constexpr int kHistorySchemaVersion = 1;

void write_history_jsonl(const ProjectHistory& history, std::ostream& out);
void write_history_jsonl(const ProjectHistory& history,
                         const std::filesystem::path& file);

ProjectHistory read_history_jsonl(std::istream& in);
ProjectHistory read_history_jsonl(const std::filesystem::path& file);

}  // namespace snoring

#endif  // SNORING_HISTORY_IO_H_
