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
#include "snoring/history.h"

#include <algorithm>
#include <cctype>
#include <utility>

namespace snoring {

std::string_view to_string(ChangeKind kind) {
  switch (kind) {
    case ChangeKind::kAdded:
      return "added";
    case ChangeKind::kModified:
      return "modified";
    case ChangeKind::kDeleted:
      return "deleted";
    case ChangeKind::kRenamed:
      return "renamed";
  }
  return "modified";
}

ChangeKind change_kind_from_string(std::string_view text) {
  if (text == "added") return ChangeKind::kAdded;
  if (text == "modified") return ChangeKind::kModified;
  if (text == "deleted") return ChangeKind::kDeleted;
  if (text == "renamed") return ChangeKind::kRenamed;
  throw InputError("unknown change kind '" + std::string(text) + "'");
}

bool is_class_path(std::string_view path) {
  constexpr std::string_view kSuffix = ".java";
  return path.size() > kSuffix.size() &&
         path.substr(path.size() - kSuffix.size()) == kSuffix;
}

int release_of(Instant timestamp, const std::vector<Release>& releases) {
  const auto it = std::lower_bound(
      releases.begin(), releases.end(), timestamp,
      [](const Release& r, Instant t) { return r.date < t; });
  return static_cast<int>(it - releases.begin());
}

ProjectHistory ProjectHistory::build(std::vector<CommitRecord> commits,
                                     std::vector<Release> releases,
                                     Warnings warnings) {
  for (std::size_t i = 0; i < releases.size(); ++i) {
    if (releases[i].ordinal != static_cast<int>(i)) {
      throw InputError("release ordinals must be contiguous from 0");
    }
    if (i > 0 && releases[i].date <= releases[i - 1].date) {
      throw InputError("release dates must be strictly increasing (" +
                       releases[i - 1].name + ", " + releases[i].name + ")");
    }
  }
  for (const auto& c : commits) {
    for (const auto& ch : c.changes) {
      if (ch.kind == ChangeKind::kRenamed && !ch.old_path) {
        throw InputError("renamed change without old path in " + c.id);
      }
      if (ch.kind != ChangeKind::kRenamed && ch.old_path) {
        throw InputError("old path on non-rename change in " + c.id);
      }
      if (ch.kind == ChangeKind::kAdded && !ch.deleted_lines.empty()) {
        throw InputError("added file with deleted lines in " + c.id);
      }
    }
  }
  ProjectHistory h;
  h.commits_ = std::move(commits);
  h.releases_ = std::move(releases);
  h.warnings_ = std::move(warnings);
  h.index();
  return h;
}

void ProjectHistory::index() {
  by_id_.clear();
  for (std::size_t i = 0; i < commits_.size(); ++i) {
    if (!by_id_.emplace(commits_[i].id, i).second) {
      throw InputError("duplicate commit id " + commits_[i].id);
    }
    for (const auto& parent : commits_[i].parents) {
      const auto it = by_id_.find(parent);
      // Parents outside the mainline (merged side chains) are legitimate.
      if (it != by_id_.end() && it->second >= i) {
        throw InputError("commit " + commits_[i].id + " precedes its parent");
      }
    }
  }
  commit_release_.resize(commits_.size());
  for (std::size_t i = 0; i < commits_.size(); ++i) {
    commit_release_[i] = release_of(commits_[i], releases_);
  }

  struct Lineage {
    std::string path;
    bool alive = true;
    std::size_t created = 0;
    int loc = 0;
  };
  std::vector<Lineage> lineages;
  std::unordered_map<std::string, std::size_t> alive_by_path;
  std::unordered_map<std::string, std::size_t> dead_by_path;
  std::vector<std::vector<std::size_t>> change_lineage(commits_.size());
  std::vector<std::vector<std::pair<std::size_t, int>>> snapshots;

  auto spawn = [&](const std::string& path, std::size_t commit) {
    if (auto dead = dead_by_path.find(path); dead != dead_by_path.end()) {
      const std::size_t id = dead->second;
      dead_by_path.erase(dead);
      lineages[id].alive = true;
      alive_by_path[path] = id;
      return id;
    }
    lineages.push_back({path, true, commit, 0});
    alive_by_path[path] = lineages.size() - 1;
    return lineages.size() - 1;
  };
  auto take_snapshot = [&] {
    std::vector<std::pair<std::size_t, int>> snap;
    for (const auto& [path, id] : alive_by_path) {
      if (is_class_path(path)) snap.emplace_back(id, lineages[id].loc);
    }
    snapshots.push_back(std::move(snap));
  };

  std::size_t next_release = 0;
  for (std::size_t i = 0; i < commits_.size(); ++i) {
    const auto& commit = commits_[i];
    while (next_release < releases_.size() &&
           commit.timestamp > releases_[next_release].date) {
      take_snapshot();
      ++next_release;
    }
    for (const auto& ch : commit.changes) {
      std::size_t id = 0;
      const auto& source = ch.source_path();
      auto found = alive_by_path.find(source);
      if (ch.kind == ChangeKind::kAdded) {
        id = found != alive_by_path.end() ? found->second : spawn(ch.path, i);
        lineages[id].loc = 0;
      } else if (found == alive_by_path.end()) {
        std::string w = "commit " + commit.id + " changes unknown file " + source;
        if (std::find(warnings_.begin(), warnings_.end(), w) == warnings_.end()) {
          warnings_.push_back(std::move(w));
        }
        id = spawn(source, i);
      } else {
        id = found->second;
      }
      auto& lineage = lineages[id];
      lineage.loc += static_cast<int>(ch.added_lines.size()) -
                     static_cast<int>(ch.deleted_lines.size());
      if (lineage.loc < 0) lineage.loc = 0;
      if (ch.kind == ChangeKind::kRenamed) {
        alive_by_path.erase(source);
        if (auto clash = alive_by_path.find(ch.path);
            clash != alive_by_path.end()) {
          lineages[clash->second].alive = false;
        }
        alive_by_path[ch.path] = id;
        dead_by_path.erase(ch.path);
        lineage.path = ch.path;
      } else if (ch.kind == ChangeKind::kDeleted) {
        alive_by_path.erase(source);
        lineage.alive = false;
        dead_by_path[source] = id;
      }
      change_lineage[i].push_back(id);
    }
  }
  while (next_release < releases_.size()) {
    take_snapshot();
    ++next_release;
  }

  // Final path is the identity; disambiguate the rare reuse collisions.
  std::vector<std::string> keys(lineages.size());
  std::map<std::string, int> seen;
  for (std::size_t id = 0; id < lineages.size(); ++id) {
    const int n = ++seen[lineages[id].path];
    keys[id] = n == 1 ? lineages[id].path
                      : lineages[id].path + "#" + std::to_string(n);
  }

  change_class_.assign(commits_.size(), {});
  for (std::size_t i = 0; i < commits_.size(); ++i) {
    const auto& changes = commits_[i].changes;
    for (std::size_t j = 0; j < changes.size(); ++j) {
      const std::size_t id = change_lineage[i][j];
      change_class_[i].push_back(is_class_path(changes[j].path) ? keys[id]
                                                                : std::string());
    }
  }
  universe_.clear();
  for (const auto& snap : snapshots) {
    ClassUniverse u;
    for (const auto& [id, loc] : snap) u.emplace(keys[id], loc);
    universe_.push_back(std::move(u));
  }
  created_.clear();
  for (std::size_t id = 0; id < lineages.size(); ++id) {
    created_.emplace(keys[id], lineages[id].created);
  }
}

std::optional<std::size_t> ProjectHistory::commit_index(
    std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

const CommitRecord& ProjectHistory::commit(std::string_view id) const {
  const auto index = commit_index(id);
  if (!index) throw InputError("unknown commit " + std::string(id));
  return commits_[*index];
}

std::size_t ProjectHistory::class_created(const std::string& key) const {
  const auto it = created_.find(key);
  if (it == created_.end()) throw InputError("unknown class " + key);
  return it->second;
}

Instant ProjectHistory::end_of_project() const {
  Instant end = releases_.empty() ? Instant{} : releases_.back().date;
  for (const auto& c : commits_) end = std::max(end, c.timestamp);
  return end;
}

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// Every PROJECT-<number> token standing alone in `message`, upper-cased.
std::vector<std::string> key_tokens(std::string_view message) {
  std::vector<std::string> tokens;
  const std::size_t n = message.size();
  std::size_t i = 0;
  while (i < n) {
    if (!std::isalpha(static_cast<unsigned char>(message[i])) ||
        (i > 0 && is_word_char(message[i - 1]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && is_word_char(message[j])) ++j;
    if (j + 1 < n && message[j] == '-' &&
        std::isdigit(static_cast<unsigned char>(message[j + 1]))) {
      std::size_t k = j + 1;
      while (k < n && std::isdigit(static_cast<unsigned char>(message[k]))) ++k;
      if (k == n || !is_word_char(message[k])) {
        tokens.push_back(upper(message.substr(i, j - i)) +
                         std::string(message.substr(j, k - j)));
      }
      i = k;
    } else {
      i = j;
    }
  }
  return tokens;
}

}  // namespace

TicketLinks link_tickets(const ProjectHistory& history,
                         const std::vector<std::string>& ticket_keys) {
  TicketLinks links;
  std::unordered_map<std::string, std::string> by_normalized;
  for (const auto& key : ticket_keys) {
    links[key];
    by_normalized.emplace(upper(key), key);
  }
  for (const auto& commit : history.commits()) {
    for (const auto& token : key_tokens(commit.message)) {
      const auto it = by_normalized.find(token);
      if (it != by_normalized.end()) links[it->second].insert(commit.id);
    }
  }
  return links;
}

}  // namespace snoring
