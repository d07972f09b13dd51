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
#include "snoring/history_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"

namespace snoring {

using nlohmann::json;

namespace {

json lines_to_json(const std::vector<DiffLine>& lines) {
  json out = json::array();
  for (const auto& l : lines) out.push_back(json::array({l.number, l.text}));
  return out;
}

std::vector<DiffLine> lines_from_json(const json& j) {
  std::vector<DiffLine> out;
  out.reserve(j.size());
  for (const auto& l : j) {
    out.push_back({l.at(0).get<int>(), l.at(1).get<std::string>()});
  }
  return out;
}

json commit_to_json(const CommitRecord& c) {
  json changes = json::array();
  for (const auto& ch : c.changes) {
    json jc = {{"path", ch.path},
               {"kind", to_string(ch.kind)},
               {"added", lines_to_json(ch.added_lines)},
               {"deleted", lines_to_json(ch.deleted_lines)}};
    if (ch.old_path) jc["old_path"] = *ch.old_path;
    changes.push_back(std::move(jc));
  }
  return {{"id", c.id},
          {"ts", to_unix(c.timestamp)},
          {"author", c.author},
          {"msg", c.message},
          {"parents", c.parents},
          {"changes", std::move(changes)}};
}

CommitRecord commit_from_json(const json& j) {
  CommitRecord c;
  c.id = j.at("id").get<std::string>();
  c.timestamp = from_unix(j.at("ts").get<std::int64_t>());
  c.author = j.at("author").get<std::string>();
  c.message = j.at("msg").get<std::string>();
  c.parents = j.at("parents").get<std::vector<std::string>>();
  for (const auto& jc : j.at("changes")) {
    FileChange ch;
    ch.path = jc.at("path").get<std::string>();
    ch.kind = change_kind_from_string(jc.at("kind").get<std::string>());
    ch.added_lines = lines_from_json(jc.at("added"));
    ch.deleted_lines = lines_from_json(jc.at("deleted"));
    if (jc.contains("old_path")) ch.old_path = jc.at("old_path").get<std::string>();
    c.changes.push_back(std::move(ch));
  }
  return c;
}

}  // namespace

void write_history_jsonl(const ProjectHistory& history, std::ostream& out) {
  json releases = json::array();
  for (const auto& r : history.releases()) {
    releases.push_back(
        {{"name", r.name}, {"ordinal", r.ordinal}, {"date", to_unix(r.date)}});
  }
  json header = {{"schema_version", kHistorySchemaVersion},
                 {"releases", std::move(releases)},
                 {"warnings", history.warnings()}};
  constexpr auto kReplace = json::error_handler_t::replace;
  out << header.dump(-1, ' ', false, kReplace) << '\n';
  for (const auto& c : history.commits()) {
    out << commit_to_json(c).dump(-1, ' ', false, kReplace) << '\n';
  }
}

void write_history_jsonl(const ProjectHistory& history,
                         const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  write_history_jsonl(history, out);
}

ProjectHistory read_history_jsonl(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<Release> releases;
  Warnings warnings;
  std::vector<CommitRecord> commits;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        const int version = j.at("schema_version").get<int>();
        if (version != kHistorySchemaVersion) {
          throw InputError("unsupported history schema_version " +
                           std::to_string(version));
        }
        for (const auto& r : j.at("releases")) {
          releases.push_back({r.at("name").get<std::string>(),
                              r.at("ordinal").get<int>(),
                              from_unix(r.at("date").get<std::int64_t>())});
        }
        if (j.contains("warnings")) warnings = j.at("warnings").get<Warnings>();
        have_header = true;
      } else {
        commits.push_back(commit_from_json(j));
      }
    } catch (const json::exception& e) {
      throw InputError("history line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  if (!have_header) throw InputError("history file has no header record");
  return ProjectHistory::build(std::move(commits), std::move(releases),
                               std::move(warnings));
}

ProjectHistory read_history_jsonl(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot read " + file.string());
  return read_history_jsonl(in);
}

}  // namespace snoring
