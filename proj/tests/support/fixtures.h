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
// Builders shared by the unit and acceptance tests.
#ifndef SNORING_TESTS_SUPPORT_FIXTURES_H_
#define SNORING_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snoring/dataset.h"
#include "snoring/history.h"
#include "snoring/labeling.h"
#include "snoring/learners.h"
#include "snoring/tickets.h"
#include "snoring/time.h"

namespace snoring::testing {

using Lines = std::vector<std::string>;

// Removed with its contents on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Midnight UTC of day `d` after 2020-01-01, plus `seconds`.
Instant day(int d, int seconds = 0);

FileChange added_file(const std::string& path, const Lines& lines);
// LCS line diff turning `before` into `after`.
FileChange modified_file(const std::string& path, const Lines& before, const Lines& after);

// Records commits against a working copy of file contents.
class HistoryBuilder {
 public:
  // Each entry replaces a file's content; std::nullopt deletes it.
  HistoryBuilder& commit(Instant at, const std::string& message,
                         const std::map<std::string, std::optional<Lines>>& files,
                         const std::string& author = "dev");
  HistoryBuilder& rename(Instant at, const std::string& message, const std::string& from,
                         const std::string& to);
  HistoryBuilder& release(const std::string& name, Instant at);
  const Lines& file(const std::string& path) const { return files_.at(path); }
  const std::string& last_commit() const { return commits_.back().id; }
  ProjectHistory build() const;

 private:
  std::vector<CommitRecord> commits_;
  std::vector<Release> releases_;
  std::map<std::string, Lines> files_;
};

Ticket bug(const std::string& key, Instant opened, std::optional<Instant> resolved,
           std::vector<std::string> affected = {}, std::vector<std::string> fixed = {});

// A scratch git repository driven through the git binary, with
// deterministic author and committer identities and dates.
class GitRepo {
 public:
  explicit GitRepo(std::filesystem::path dir);
  const std::filesystem::path& dir() const { return dir_; }
  void write(const std::string& path, const Lines& lines);
  void remove(const std::string& path);
  void move(const std::string& from, const std::string& to);
  void commit(const std::string& message, Instant at);
  void tag(const std::string& name);
  // Runs git in the repository with author and committer date `at`.
  void git(const std::vector<std::string>& args, Instant at = day(0));

 private:
  std::filesystem::path dir_;
};

// The three-class, three-release scenario: events per class and release
// (I introduced, F fixed, N nothing).
//        r1   r2   r3
//   C1   IF   I    F
//   C2   I    N    F
//   C3   II   F    F
// Defects carry affected versions, so introductions are exact.
struct ThreeReleaseScenario {
  ProjectHistory history;
  std::vector<Ticket> tickets;
};
ThreeReleaseScenario three_release_scenario();

// Git repository with releases 1.0 to 4.0 holding one class: a defect
// enters in 2.0, a reformat-only commit re-indents the whole file in 3.0 and
// the PROJ-1 fix rewrites the defective line in 4.0.
void write_reformat_repo(const std::filesystem::path& dir);
Ticket reformat_ticket(std::vector<std::string> affected = {});

// Label of `cls` at release ordinal `release` in `cells`; throws when absent.
bool label_of(const std::vector<LabeledCell>& cells, const std::string& cls, int release);
Outcome outcome_of(const std::vector<CellAssessment>& cells, const std::string& cls,
                   int release);

// Two-feature benchmark: label = x0 > 0 with |x0| >= 0.2, x1 pure noise.
Table separable_table(std::size_t rows, std::uint64_t seed);

// 1 informative feature, 2 exact copies of it and 5 noise columns.
Table planted_cfs_table(std::size_t rows, std::uint64_t seed);

}  // namespace snoring::testing

#endif  // SNORING_TESTS_SUPPORT_FIXTURES_H_
