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
#ifndef SNORING_JIRA_CLIENT_H_
#define SNORING_JIRA_CLIENT_H_

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "snoring/tickets.h"

namespace snoring {

struct JiraFetchOptions {
  int page_size = 50;
  int max_attempts = 5;
  // Doubles after every failed attempt.
  std::chrono::milliseconds initial_backoff{500};
  // Raw pages land in <cache_dir>/<project>/issues/page-<n>.json.
  std::optional<std::filesystem::path> cache_dir;
  // Sent as "Authorization: Bearer <token>" when non-empty.
  std::string token;
};

// Pages through `<endpoint>/rest/api/2/search` for the project's bug
// issues. `endpoint` is an http(s) base URL, optionally with a path prefix.
// Transport failures and 5xx/429 answers are retried with exponential
// backoff; after `max_attempts` the call throws InputError.
std::vector<Ticket> fetch_issues(const std::string& endpoint,
                                 const std::string& project_key,
                                 const JiraFetchOptions& options = {},
                                 Warnings* warnings = nullptr);

// Replays pages previously cached by fetch_issues.
std::vector<Ticket> load_cached_issues(const std::filesystem::path& cache_dir,
                                       const std::string& project_key,
                                       Warnings* warnings = nullptr);

// The JQL sent for a project.
std::string bug_query(const std::string& project_key);

}  // namespace snoring

#endif  // SNORING_JIRA_CLIENT_H_
