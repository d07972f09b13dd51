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
#include "snoring/git_miner.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <regex>
#include <sstream>

#include "snoring/process.h"

namespace snoring {

namespace {

constexpr char kRecordSep = '\x1e';
constexpr char kFieldSep = '\x1f';

std::string git_unquote(std::string_view s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::string(s);
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] != '\\' || i + 2 >= s.size()) {
      out += s[i];
      continue;
    }
    const char c = s[++i];
    switch (c) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      default:
        if (c >= '0' && c <= '7' && i + 2 < s.size()) {
          out += static_cast<char>(((c - '0') << 6) | ((s[i + 1] - '0') << 3) |
                                   (s[i + 2] - '0'));
          i += 2;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// "a/src/Foo.java" -> "src/Foo.java"
std::string strip_prefix(std::string_view path) {
  std::string p = git_unquote(path);
  if (p.size() > 2 && (p[0] == 'a' || p[0] == 'b') && p[1] == '/') p.erase(0, 2);
  return p;
}

int parse_int(std::string_view s) {
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

struct HunkHeader {
  int old_start = 0, old_count = 1, new_start = 0, new_count = 1;
};

std::optional<HunkHeader> parse_hunk(std::string_view line) {
  // @@ -a[,b] +c[,d] @@
  static const std::regex re(R"(^@@ -(\d+)(?:,(\d+))? \+(\d+)(?:,(\d+))? @@)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(line.begin(), line.end(), m, re)) return std::nullopt;
  HunkHeader h;
  h.old_start = parse_int(std::string_view(&*m[1].first, m[1].length()));
  if (m[2].matched) h.old_count = parse_int(std::string_view(&*m[2].first, m[2].length()));
  h.new_start = parse_int(std::string_view(&*m[3].first, m[3].length()));
  if (m[4].matched) h.new_count = parse_int(std::string_view(&*m[4].first, m[4].length()));
  return h;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::vector<FileChange> parse_diff(std::string_view diff) {
  std::vector<FileChange> changes;
  FileChange* current = nullptr;
  int old_line = 0, new_line = 0, old_left = 0, new_left = 0;
  std::size_t pos = 0;
  while (pos < diff.size()) {
    std::size_t end = diff.find('\n', pos);
    if (end == std::string_view::npos) end = diff.size();
    std::string_view line = diff.substr(pos, end - pos);
    pos = end + 1;

    if (current && (old_left > 0 || new_left > 0)) {
      if (!line.empty() && line[0] == '-' && old_left > 0) {
        current->deleted_lines.push_back({old_line++, sanitize_utf8(line.substr(1))});
        --old_left;
        continue;
      }
      if (!line.empty() && line[0] == '+' && new_left > 0) {
        current->added_lines.push_back({new_line++, sanitize_utf8(line.substr(1))});
        --new_left;
        continue;
      }
      if (starts_with(line, "\\")) continue;
      old_left = new_left = 0;
    }
    if (starts_with(line, "\\")) continue;
    if (starts_with(line, "diff --git ")) {
      changes.emplace_back();
      current = &changes.back();
      const auto b = line.rfind(" b/");
      current->path = b == std::string_view::npos
                          ? std::string(line.substr(11))
                          : std::string(line.substr(b + 3));
      continue;
    }
    if (!current) continue;
    if (starts_with(line, "new file mode")) {
      current->kind = ChangeKind::kAdded;
    } else if (starts_with(line, "deleted file mode")) {
      current->kind = ChangeKind::kDeleted;
    } else if (starts_with(line, "rename from ")) {
      current->kind = ChangeKind::kRenamed;
      current->old_path = git_unquote(line.substr(12));
    } else if (starts_with(line, "rename to ")) {
      current->path = git_unquote(line.substr(10));
    } else if (starts_with(line, "--- ")) {
      if (line.substr(4) != "/dev/null" &&
          current->kind == ChangeKind::kDeleted) {
        current->path = strip_prefix(line.substr(4));
      }
    } else if (starts_with(line, "+++ ")) {
      if (line.substr(4) != "/dev/null") current->path = strip_prefix(line.substr(4));
    } else if (starts_with(line, "@@")) {
      const auto h = parse_hunk(line);
      if (!h) continue;
      old_line = h->old_start;
      new_line = h->new_start;
      old_left = h->old_count;
      new_left = h->new_count;
    }
  }
  return changes;
}

// Version-aware name order: digit runs compare numerically.
bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ei = i, ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      auto na = a.substr(i, ei - i), nb = b.substr(j, ej - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ei;
      j = ej;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

ProcessResult git(const std::filesystem::path& repo,
                  std::vector<std::string> args) {
  std::vector<std::string> argv = {"git", "-C", repo.string(), "-c",
                                   "core.quotepath=off"};
  argv.insert(argv.end(), args.begin(), args.end());
  return run_process(argv, {{"LC_ALL", "C"}, {"GIT_PAGER", "cat"}});
}

}  // namespace

std::string sanitize_utf8(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    int len = 0;
    if (c < 0x80) len = 1;
    else if ((c >> 5) == 0x6) len = 2;
    else if ((c >> 4) == 0xE) len = 3;
    else if ((c >> 3) == 0x1E) len = 4;
    bool ok = len > 0 && i + len <= text.size();
    for (int k = 1; ok && k < len; ++k) {
      ok = (static_cast<unsigned char>(text[i + k]) >> 6) == 0x2;
    }
    if (ok) {
      out.append(text.substr(i, len));
      i += len;
    } else {
      out += "\xEF\xBF\xBD";
      ++i;
    }
  }
  return out;
}

std::vector<CommitRecord> parse_git_log(std::string_view raw) {
  std::vector<CommitRecord> commits;
  std::size_t pos = raw.find(kRecordSep);
  while (pos != std::string_view::npos) {
    const std::size_t next = raw.find(kRecordSep, pos + 1);
    std::string_view record = raw.substr(
        pos + 1, next == std::string_view::npos ? std::string_view::npos
                                                : next - pos - 1);
    pos = next;
    std::string_view fields[5];
    std::size_t at = 0;
    for (auto& f : fields) {
      const std::size_t sep = record.find(kFieldSep, at);
      if (sep == std::string_view::npos) {
        throw InputError("truncated git log record");
      }
      f = record.substr(at, sep - at);
      at = sep + 1;
    }
    CommitRecord c;
    c.id = std::string(fields[0]);
    std::istringstream parents{std::string(fields[1])};
    for (std::string p; parents >> p;) c.parents.push_back(p);
    std::int64_t ts = 0;
    std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), ts);
    c.timestamp = from_unix(ts);
    c.author = sanitize_utf8(fields[3]);
    std::string_view msg = fields[4];
    while (!msg.empty() && (msg.back() == '\n' || msg.back() == '\r')) {
      msg.remove_suffix(1);
    }
    c.message = sanitize_utf8(msg);
    c.changes = parse_diff(record.substr(at));
    commits.push_back(std::move(c));
  }
  return commits;
}

ProjectHistory ingest_history(const std::filesystem::path& repo,
                              const std::string& tag_pattern) {
  if (git(repo, {"rev-parse", "--git-dir"}).exit_code != 0) {
    throw InputError("unreadable repository: " + repo.string());
  }
  std::regex pattern;
  try {
    pattern = std::regex(tag_pattern);
  } catch (const std::regex_error& e) {
    throw InputError("bad tag pattern '" + tag_pattern + "': " + e.what());
  }
  const auto refs = git(repo, {"for-each-ref",
                               "--format=%(refname:short)%09%(*committerdate:unix)"
                               "%09%(committerdate:unix)",
                               "refs/tags"});
  if (refs.exit_code != 0) throw InputError("git for-each-ref failed: " + refs.err);

  struct Tag {
    std::string name;
    std::int64_t date;
  };
  std::vector<Tag> tags;
  std::istringstream lines(refs.out);
  for (std::string line; std::getline(lines, line);) {
    const auto t1 = line.find('\t');
    const auto t2 = line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos) continue;
    std::string name = line.substr(0, t1);
    if (!std::regex_search(name, pattern)) continue;
    std::string date = line.substr(t1 + 1, t2 - t1 - 1);
    if (date.empty()) date = line.substr(t2 + 1);
    if (date.empty()) continue;  // tag of a non-commit object
    tags.push_back({std::move(name), std::stoll(date)});
  }

  Warnings warnings;
  std::sort(tags.begin(), tags.end(),
            [](const Tag& a, const Tag& b) { return natural_less(a.name, b.name); });
  const auto by_version = tags;
  std::stable_sort(tags.begin(), tags.end(),
                   [](const Tag& a, const Tag& b) { return a.date < b.date; });
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i].name != by_version[i].name) {
      warnings.push_back("tag dates non-monotone in version order; releases "
                         "re-sorted by date");
      break;
    }
  }
  std::vector<Release> releases;
  for (const auto& t : tags) {
    if (!releases.empty() && to_unix(releases.back().date) == t.date) {
      warnings.push_back("tag " + t.name + " shares its date with " +
                         releases.back().name + "; dropped");
      continue;
    }
    releases.push_back({t.name, static_cast<int>(releases.size()), from_unix(t.date)});
  }
  if (releases.size() < 2) {
    throw InputError("fewer than 2 releases match tag pattern '" + tag_pattern +
                     "' in " + repo.string());
  }

  const auto log = git(repo, {"log", "--first-parent", "--reverse",
                              "--diff-merges=first-parent", "-M50%",
                              "--unified=0", "--no-color", "--no-ext-diff",
                              "--format=%x1e%H%x1f%P%x1f%ct%x1f%an%x1f%B%x1f",
                              "-p", "HEAD"});
  if (log.exit_code != 0) throw InputError("git log failed: " + log.err);
  return ProjectHistory::build(parse_git_log(log.out), std::move(releases),
                               std::move(warnings));
}

}  // namespace snoring
