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
#ifndef SNORING_TICKETS_H_
#define SNORING_TICKETS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "snoring/error.h"
#include "snoring/history.h"
#include "snoring/time.h"

namespace snoring {

// A defect ticket from the issue tracker. Version lists hold the tracker's
// raw names; they are matched to releases later.
struct Ticket {
  std::string key;
  std::string kind;
  Instant opened;
  std::optional<Instant> resolved;
  std::vector<std::string> affected_versions;
  std::vector<std::string> fixed_versions;
  std::string status;

  friend bool operator==(const Ticket&, const Ticket&) = default;
};

bool is_defect_kind(std::string_view kind);

// Orders keys by project prefix, then numerically by issue number.
bool ticket_key_less(std::string_view a, std::string_view b);

// Normalizes Jira issue objects (`{"key": ..., "fields": {...}}`). Non-bug
// issues are dropped; malformed issues are skipped with a warning. The
// result is sorted by key.
std::vector<Ticket> normalize_issues(const nlohmann::json& issues,
                                     Warnings* warnings = nullptr);

// Reads a JSON array of Jira issue objects. Syntax errors raise InputError
// naming the line and column.
std::vector<Ticket> parse_issues(std::string_view text,
                                 Warnings* warnings = nullptr);
std::vector<Ticket> load_issues(const std::filesystem::path& file,
                                Warnings* warnings = nullptr);

// Inverse of normalization, for exports and synthetic projects.
nlohmann::json issue_to_json(const Ticket& ticket);
void write_issues_json(const std::vector<Ticket>& tickets,
                       const std::filesystem::path& file);

// Trims surrounding whitespace and one leading 'v'/'V'.
std::string normalize_version(std::string_view name);

// Ordinals of the releases named in `names`, ascending and unique. Names
// without a matching release are dropped with a warning.
std::vector<int> resolve_versions(const std::vector<std::string>& names,
                                  const std::vector<Release>& releases,
                                  Warnings* warnings = nullptr);

// Fraction of resolved defect tickets carrying at least one affected
// version; with `releases`, only versions resolvable against them count.
// Throws InputError when no resolved defect ticket exists.
double av_availability(const std::vector<Ticket>& tickets);
double av_availability(const std::vector<Ticket>& tickets,
                       const std::vector<Release>& releases);

}  // namespace snoring

#endif  // SNORING_TICKETS_H_
