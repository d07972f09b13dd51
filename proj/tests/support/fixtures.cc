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
#include "support/fixtures.h"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "snoring/process.h"
#include "snoring/random.h"

namespace fs = std::filesystem;

namespace snoring::testing {

TempDir::TempDir() {
  std::string pattern = (fs::temp_directory_path() / "snoring-test-XXXXXX").string();
  if (!mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

Instant day(int d, int seconds) {
  // 2020-01-01T00:00:00Z
  return from_unix(1577836800LL + static_cast<std::int64_t>(d) * 86400 + seconds);
}

FileChange added_file(const std::string& path, const Lines& lines) {
  FileChange change;
  change.path = path;
  change.kind = ChangeKind::kAdded;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    change.added_lines.push_back({static_cast<int>(i) + 1, lines[i]});
  }
  return change;
}

FileChange modified_file(const std::string& path, const Lines& before, const Lines& after) {
  const std::size_t n = before.size(), m = after.size();
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = before[i] == after[j] ? lcs[i + 1][j + 1] + 1
                                        : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  FileChange change;
  change.path = path;
  change.kind = ChangeKind::kModified;
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && before[i] == after[j]) {
      ++i;
      ++j;
    } else if (j < m && (i == n || lcs[i][j + 1] >= lcs[i + 1][j])) {
      change.added_lines.push_back({static_cast<int>(j) + 1, after[j]});
      ++j;
    } else {
      change.deleted_lines.push_back({static_cast<int>(i) + 1, before[i]});
      ++i;
    }
  }
  return change;
}

HistoryBuilder& HistoryBuilder::commit(Instant at, const std::string& message,
                                       const std::map<std::string, std::optional<Lines>>& files,
                                       const std::string& author) {
  CommitRecord c;
  char id[16];
  std::snprintf(id, sizeof id, "c%04zu", commits_.size());
  c.id = id;
  c.timestamp = at;
  c.author = author;
  c.message = message;
  if (!commits_.empty()) c.parents = {commits_.back().id};
  for (const auto& [path, content] : files) {
    const auto it = files_.find(path);
    if (!content) {
      FileChange del;
      del.path = path;
      del.kind = ChangeKind::kDeleted;
      for (std::size_t i = 0; i < it->second.size(); ++i) {
        del.deleted_lines.push_back({static_cast<int>(i) + 1, it->second[i]});
      }
      c.changes.push_back(std::move(del));
      files_.erase(it);
    } else if (it == files_.end()) {
      c.changes.push_back(added_file(path, *content));
      files_[path] = *content;
    } else {
      c.changes.push_back(modified_file(path, it->second, *content));
      it->second = *content;
    }
  }
  commits_.push_back(std::move(c));
  return *this;
}

HistoryBuilder& HistoryBuilder::rename(Instant at, const std::string& message,
                                       const std::string& from, const std::string& to) {
  CommitRecord c;
  char id[16];
  std::snprintf(id, sizeof id, "c%04zu", commits_.size());
  c.id = id;
  c.timestamp = at;
  c.author = "dev";
  c.message = message;
  if (!commits_.empty()) c.parents = {commits_.back().id};
  FileChange change;
  change.path = to;
  change.kind = ChangeKind::kRenamed;
  change.old_path = from;
  c.changes.push_back(change);
  files_[to] = files_.at(from);
  files_.erase(from);
  commits_.push_back(std::move(c));
  return *this;
}

HistoryBuilder& HistoryBuilder::release(const std::string& name, Instant at) {
  releases_.push_back({name, static_cast<int>(releases_.size()), at});
  return *this;
}

ProjectHistory HistoryBuilder::build() const {
  return ProjectHistory::build(commits_, releases_);
}

Ticket bug(const std::string& key, Instant opened, std::optional<Instant> resolved,
           std::vector<std::string> affected, std::vector<std::string> fixed) {
  Ticket t;
  t.key = key;
  t.kind = "Bug";
  t.opened = opened;
  t.resolved = resolved;
  t.affected_versions = std::move(affected);
  t.fixed_versions = std::move(fixed);
  t.status = resolved ? "Resolved" : "Open";
  return t;
}

GitRepo::GitRepo(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
  git({"init", "-q", "-b", "main"});
  git({"config", "user.name", "Dev"});
  git({"config", "user.email", "dev@example.org"});
  git({"config", "commit.gpgsign", "false"});
  git({"config", "tag.gpgsign", "false"});
}

void GitRepo::write(const std::string& path, const Lines& lines) {
  const fs::path file = dir_ / path;
  fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  for (const auto& l : lines) out << l << '\n';
}

void GitRepo::remove(const std::string& path) { git({"rm", "-q", path}); }

void GitRepo::move(const std::string& from, const std::string& to) {
  fs::create_directories((dir_ / to).parent_path());
  git({"mv", from, to});
}

void GitRepo::commit(const std::string& message, Instant at) {
  git({"add", "-A"});
  git({"commit", "-q", "--allow-empty", "-m", message}, at);
}

void GitRepo::tag(const std::string& name) { git({"tag", name}); }

void GitRepo::git(const std::vector<std::string>& args, Instant at) {
  std::vector<std::string> argv = {"git", "-C", dir_.string()};
  argv.insert(argv.end(), args.begin(), args.end());
  const std::string date = format_iso8601(at);
  const auto result = run_process(argv, {{"GIT_AUTHOR_DATE", date},
                                         {"GIT_COMMITTER_DATE", date},
                                         {"GIT_CONFIG_NOSYSTEM", "1"},
                                         {"HOME", dir_.string()}});
  if (result.exit_code != 0) {
    throw std::runtime_error("git failed: " + result.err);
  }
}

namespace {

Lines class_body(const std::string& name, const Lines& members) {
  Lines lines = {"package demo;", "", "public class " + name + " {"};
  lines.insert(lines.end(), members.begin(), members.end());
  lines.push_back("}");
  return lines;
}

}  // namespace

ThreeReleaseScenario three_release_scenario() {
  HistoryBuilder h;
  auto c = [](const std::string& name, const Lines& members) {
    return std::optional<Lines>(class_body(name, members));
  };
  h.commit(day(1), "Initial import",
           {{"src/C1.java", c("C1", {"  void run() {}"})},
            {"src/C2.java", c("C2", {"  void run() {}"})},
            {"src/C3.java", c("C3", {"  void run() {}"})}});
  // r1: C1 gets a defect fixed within the release; C2 and C3 get defects that
  // stay latent.
  h.commit(day(5), "Add limits",
           {{"src/C1.java", c("C1", {"  int a = 1 / 0;", "  void run() {}"})},
            {"src/C2.java", c("C2", {"  int b = 2 / 0;", "  void run() {}"})},
            {"src/C3.java",
             c("C3", {"  int d = 4 / 0;", "  int e = 5 / 0;", "  void run() {}"})}});
  h.commit(day(10), "PROJ-1 guard division", {{"src/C1.java", c("C1", {"  void run() {}"})}});
  h.release("1.0", day(30));
  // r2
  h.commit(day(35), "Add counter",
           {{"src/C1.java", c("C1", {"  int f = 6 / 0;", "  void run() {}"})}});
  h.commit(day(40), "PROJ-4 guard division",
           {{"src/C3.java", c("C3", {"  int e = 5 / 0;", "  void run() {}"})}});
  h.release("2.0", day(60));
  // r3
  h.commit(day(70), "PROJ-2 guard division", {{"src/C1.java", c("C1", {"  void run() {}"})}});
  h.commit(day(71), "PROJ-3 guard division", {{"src/C2.java", c("C2", {"  void run() {}"})}});
  h.commit(day(72), "PROJ-5 guard division", {{"src/C3.java", c("C3", {"  void run() {}"})}});
  h.release("3.0", day(90));

  ThreeReleaseScenario s;
  s.history = h.build();
  s.tickets = {
      bug("PROJ-1", day(6), day(10), {"1.0"}, {"1.0"}),
      bug("PROJ-2", day(36), day(70), {"2.0"}, {"3.0"}),
      bug("PROJ-3", day(6), day(71), {"1.0"}, {"3.0"}),
      bug("PROJ-4", day(6), day(40), {"1.0"}, {"2.0"}),
      bug("PROJ-5", day(6), day(72), {"1.0"}, {"3.0"}),
  };
  return s;
}

void write_reformat_repo(const fs::path& dir) {
  GitRepo repo(dir);
  repo.write("README.md", {"demo"});
  repo.write("src/demo/Calc.java", {"package demo;", "", "public class Calc {",
                                    "    int div(int a, int b) {", "        return 0;",
                                    "    }", "}"});
  repo.commit("Initial import", day(1));
  repo.tag("1.0");
  repo.write("src/demo/Calc.java", {"package demo;", "", "public class Calc {",
                                    "    int div(int a, int b) {", "        return a / b;",
                                    "    }", "}"});
  repo.commit("Implement division", day(20));
  repo.tag("2.0");
  repo.write("src/demo/Calc.java", {"package demo;", "", "public class Calc {",
                                    "  // Integer division.", "  int div(int a, int b) {",
                                    "    return a / b;", "  }", "}"});
  repo.commit("Reformat sources", day(40));
  repo.tag("3.0");
  repo.write("src/demo/Calc.java", {"package demo;", "", "public class Calc {",
                                    "  // Integer division.", "  int div(int a, int b) {",
                                    "    return b == 0 ? 0 : a / b;", "  }", "}"});
  repo.commit("PROJ-1 guard against a zero divisor", day(60));
  repo.tag("4.0");
}

Ticket reformat_ticket(std::vector<std::string> affected) {
  return bug("PROJ-1", day(50), day(60), std::move(affected), {"4.0"});
}

bool label_of(const std::vector<LabeledCell>& cells, const std::string& cls, int release) {
  for (const auto& c : cells) {
    if (c.class_path == cls && c.release == release) return c.defective;
  }
  throw std::out_of_range("no cell " + cls + "@" + std::to_string(release));
}

Outcome outcome_of(const std::vector<CellAssessment>& cells, const std::string& cls,
                   int release) {
  for (const auto& c : cells) {
    if (c.class_path == cls && c.release == release) return c.outcome;
  }
  throw std::out_of_range("no cell " + cls + "@" + std::to_string(release));
}

Table separable_table(std::size_t rows, std::uint64_t seed) {
  Rng rng(seed);
  Table t;
  t.names = {"x0", "x1"};
  for (std::size_t i = 0; i < rows; ++i) {
    const bool positive = uniform_real(rng) < 0.5;
    const double magnitude = 0.2 + 0.8 * uniform_real(rng);
    t.x.push_back({positive ? magnitude : -magnitude, 2 * uniform_real(rng) - 1});
    t.y.push_back(positive ? 1 : 0);
  }
  return t;
}

namespace {

double normal(Rng& rng) {
  const double u1 = 1.0 - uniform_real(rng);
  const double u2 = uniform_real(rng);
  return std::sqrt(-2 * std::log(u1)) * std::cos(2 * M_PI * u2);
}

}  // namespace

Table planted_cfs_table(std::size_t rows, std::uint64_t seed) {
  Rng rng(seed);
  Table t;
  t.names = {"informative", "copy_a", "copy_b", "noise_0", "noise_1",
             "noise_2",     "noise_3", "noise_4"};
  for (std::size_t i = 0; i < rows; ++i) {
    const int y = uniform_real(rng) < 0.3 ? 1 : 0;
    const double informative = y + 0.6 * normal(rng);
    std::vector<double> row = {informative, informative, informative};
    for (int k = 0; k < 5; ++k) row.push_back(normal(rng));
    t.x.push_back(std::move(row));
    t.y.push_back(y);
  }
  return t;
}

}  // namespace snoring::testing
