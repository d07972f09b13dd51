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
// Release-annotated commit history of one project: the raw material every
// other stage reads. A ProjectHistory is immutable once built.
#ifndef SNORING_HISTORY_H_
#define SNORING_HISTORY_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "snoring/error.h"
#include "snoring/time.h"

namespace snoring {

enum class ChangeKind { kAdded, kModified, kDeleted, kRenamed };

std::string_view to_string(ChangeKind kind);
ChangeKind change_kind_from_string(std::string_view text);

// One line of a diff. `number` is 1-based: the line's position in the new
// file for added lines and in the old file for deleted lines.
struct DiffLine {
  int number = 0;
  std::string text;

  friend bool operator==(const DiffLine&, const DiffLine&) = default;
};

struct FileChange {
  std::string path;
  ChangeKind kind = ChangeKind::kModified;
  std::vector<DiffLine> added_lines;    // ascending by number
  std::vector<DiffLine> deleted_lines;  // ascending by number
  std::optional<std::string> old_path;  // set iff kind == kRenamed

  // Path of the file before this change.
  const std::string& source_path() const {
    return kind == ChangeKind::kRenamed ? *old_path : path;
  }

  friend bool operator==(const FileChange&, const FileChange&) = default;
};

struct CommitRecord {
  std::string id;
  Instant timestamp;
  std::string author;
  std::string message;
  std::vector<std::string> parents;
  std::vector<FileChange> changes;

  friend bool operator==(const CommitRecord&, const CommitRecord&) = default;
};

struct Release {
  std::string name;
  int ordinal = 0;
  Instant date;

  friend bool operator==(const Release&, const Release&) = default;
};

// A class is one `.java` file.
bool is_class_path(std::string_view path);

// Ordinal of the earliest release whose date is >= `timestamp`. Returns
// releases.size() (the post-last marker) for commits after the last release.
int release_of(Instant timestamp, const std::vector<Release>& releases);
inline int release_of(const CommitRecord& commit,
                      const std::vector<Release>& releases) {
  return release_of(commit.timestamp, releases);
}

// Applies `change` to the line sequence of its source file. `make_added`
// turns an added DiffLine into an element; deleted elements are passed to
// `on_deleted(old_line_number, element)` before removal. Throws InputError
// when the change does not fit the file.
template <typename Line, typename MakeAdded, typename OnDeleted>
void apply_change(std::vector<Line>& lines, const FileChange& change,
                  MakeAdded&& make_added, OnDeleted&& on_deleted) {
  if (change.kind == ChangeKind::kAdded) lines.clear();
  std::vector<Line> kept;
  kept.reserve(lines.size());
  auto del = change.deleted_lines.begin();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (del != change.deleted_lines.end() && del->number == number) {
      on_deleted(number, lines[i]);
      ++del;
    } else {
      kept.push_back(std::move(lines[i]));
    }
  }
  if (del != change.deleted_lines.end()) {
    throw InputError("diff for " + change.path + " deletes line " +
                     std::to_string(del->number) + " beyond end of file");
  }
  std::vector<Line> result;
  result.reserve(kept.size() + change.added_lines.size());
  auto add = change.added_lines.begin();
  auto keep = kept.begin();
  const std::size_t total = kept.size() + change.added_lines.size();
  for (std::size_t i = 0; i < total; ++i) {
    const int number = static_cast<int>(i) + 1;
    if (add != change.added_lines.end() && add->number == number) {
      result.push_back(make_added(*add));
      ++add;
    } else if (keep != kept.end()) {
      result.push_back(std::move(*keep++));
    } else {
      throw InputError("diff for " + change.path + " adds line " +
                       std::to_string(add == change.added_lines.end()
                                          ? number
                                          : add->number) +
                       " out of sequence");
    }
  }
  if (add != change.added_lines.end()) {
    throw InputError("diff for " + change.path + " has dangling added lines");
  }
  lines = std::move(result);
}

// Classes present in one release snapshot, keyed by class identity, with
// their physical line count at the release tag.
using ClassUniverse = std::map<std::string, int>;

class ProjectHistory {
 public:
  ProjectHistory() = default;

  // Validates and indexes. Commits must be in mainline order with unique
  // ids; releases must have contiguous ordinals and strictly increasing
  // dates. Throws InputError otherwise.
  static ProjectHistory build(std::vector<CommitRecord> commits,
                              std::vector<Release> releases,
                              Warnings warnings = {});

  const std::vector<CommitRecord>& commits() const { return commits_; }
  const std::vector<Release>& releases() const { return releases_; }
  const Warnings& warnings() const { return warnings_; }

  int post_last_ordinal() const { return static_cast<int>(releases_.size()); }
  int release_ordinal(std::size_t commit_index) const {
    return commit_release_[commit_index];
  }
  std::optional<std::size_t> commit_index(std::string_view id) const;
  const CommitRecord& commit(std::string_view id) const;

  // Class identity of a file is the last path it had in the history, so
  // that renamed classes keep one identity. Empty for non-class files.
  const std::string& class_key(std::size_t commit_index,
                               std::size_t change_index) const {
    return change_class_[commit_index][change_index];
  }
  const ClassUniverse& class_universe(int ordinal) const {
    return universe_.at(static_cast<std::size_t>(ordinal));
  }
  // Commit index where the class first appeared.
  std::size_t class_created(const std::string& key) const;

  // Instant after which nothing else happens in the history.
  Instant end_of_project() const;

  friend bool operator==(const ProjectHistory& a, const ProjectHistory& b) {
    return a.commits_ == b.commits_ && a.releases_ == b.releases_;
  }

 private:
  void index();

  std::vector<CommitRecord> commits_;
  std::vector<Release> releases_;
  Warnings warnings_;

  std::unordered_map<std::string, std::size_t> by_id_;
  std::vector<int> commit_release_;
  std::vector<std::vector<std::string>> change_class_;
  std::vector<ClassUniverse> universe_;
  std::map<std::string, std::size_t> created_;
};

// Ticket key -> ids of commits whose message names the key as a standalone
// token (the project prefix is matched case-insensitively).
using TicketLinks = std::map<std::string, std::set<std::string>>;

TicketLinks link_tickets(const ProjectHistory& history,
                         const std::vector<std::string>& ticket_keys);

}  // namespace snoring

#endif  // SNORING_HISTORY_H_
