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
#include "snoring/tickets.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <map>
#include <set>

namespace snoring {

using nlohmann::json;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> version_names(const json& fields, const char* name) {
  std::vector<std::string> out;
  if (!fields.contains(name) || fields.at(name).is_null()) return out;
  for (const auto& v : fields.at(name)) {
    if (v.is_string()) {
      out.push_back(v.get<std::string>());
    } else if (v.contains("name")) {
      out.push_back(v.at("name").get<std::string>());
    }
  }
  return out;
}

std::string nested_name(const json& fields, const char* name) {
  if (!fields.contains(name) || fields.at(name).is_null()) return {};
  const auto& v = fields.at(name);
  if (v.is_string()) return v.get<std::string>();
  return v.value("name", std::string());
}

std::optional<Ticket> normalize_issue(const json& issue, Warnings* warnings) {
  std::string key = "?";
  try {
    key = issue.at("key").get<std::string>();
    const auto& fields = issue.at("fields");
    Ticket t;
    t.key = key;
    t.kind = nested_name(fields, "issuetype");
    if (!is_defect_kind(t.kind)) return std::nullopt;
    t.opened = parse_iso8601(fields.at("created").get<std::string>());
    if (fields.contains("resolutiondate") && !fields.at("resolutiondate").is_null()) {
      t.resolved = parse_iso8601(fields.at("resolutiondate").get<std::string>());
      if (*t.resolved < t.opened) {
        throw InputError("resolved before opened");
      }
    }
    t.affected_versions = version_names(fields, "versions");
    t.fixed_versions = version_names(fields, "fixVersions");
    t.status = nested_name(fields, "status");
    return t;
  } catch (const std::exception& e) {
    if (warnings) warnings->push_back("skipped malformed issue " + key + ": " + e.what());
    return std::nullopt;
  }
}

}  // namespace

bool is_defect_kind(std::string_view kind) {
  const auto k = lower(kind);
  return k == "bug" || k == "defect";
}

bool ticket_key_less(std::string_view a, std::string_view b) {
  const auto da = a.rfind('-');
  const auto db = b.rfind('-');
  const auto pa = a.substr(0, da), pb = b.substr(0, db);
  if (pa != pb || da == std::string_view::npos || db == std::string_view::npos) {
    return pa != pb ? pa < pb : a < b;
  }
  const auto na = a.substr(da + 1), nb = b.substr(db + 1);
  if (na.size() != nb.size()) return na.size() < nb.size();
  return na < nb;
}

std::vector<Ticket> normalize_issues(const json& issues, Warnings* warnings) {
  if (!issues.is_array()) throw InputError("issue list must be a JSON array");
  std::vector<Ticket> out;
  for (const auto& issue : issues) {
    if (auto t = normalize_issue(issue, warnings)) out.push_back(std::move(*t));
  }
  std::stable_sort(out.begin(), out.end(), [](const Ticket& a, const Ticket& b) {
    return ticket_key_less(a.key, b.key);
  });
  return out;
}

std::vector<Ticket> parse_issues(std::string_view text, Warnings* warnings) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error& e) {
    // Recover line/column from the byte offset.
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    const auto before = text.substr(0, offset == 0 ? 0 : offset - 1);
    const auto line = 1 + std::count(before.begin(), before.end(), '\n');
    const auto last_nl = before.rfind('\n');
    const auto column =
        last_nl == std::string_view::npos ? before.size() + 1 : before.size() - last_nl;
    throw InputError("issues JSON parse error at line " + std::to_string(line) +
                     ", column " + std::to_string(column) + " (byte " +
                     std::to_string(e.byte) + "): " + e.what());
  }
  return normalize_issues(parsed, warnings);
}

std::vector<Ticket> load_issues(const std::filesystem::path& file,
                                Warnings* warnings) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot read " + file.string());
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  return parse_issues(text, warnings);
}

json issue_to_json(const Ticket& t) {
  auto names = [](const std::vector<std::string>& v) {
    json out = json::array();
    for (const auto& n : v) out.push_back({{"name", n}});
    return out;
  };
  json fields = {{"issuetype", {{"name", t.kind}}},
                 {"created", format_iso8601(t.opened)},
                 {"resolutiondate", t.resolved ? json(format_iso8601(*t.resolved))
                                               : json(nullptr)},
                 {"versions", names(t.affected_versions)},
                 {"fixVersions", names(t.fixed_versions)},
                 {"status", {{"name", t.status}}}};
  return {{"key", t.key}, {"fields", std::move(fields)}};
}

void write_issues_json(const std::vector<Ticket>& tickets,
                       const std::filesystem::path& file) {
  json out = json::array();
  for (const auto& t : tickets) out.push_back(issue_to_json(t));
  std::ofstream f(file, std::ios::binary);
  if (!f) throw InputError("cannot write " + file.string());
  f << out.dump(1) << '\n';
}

std::string normalize_version(std::string_view name) {
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) {
    name.remove_prefix(1);
  }
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) {
    name.remove_suffix(1);
  }
  if (!name.empty() && (name.front() == 'v' || name.front() == 'V')) {
    name.remove_prefix(1);
  }
  return std::string(name);
}

std::vector<int> resolve_versions(const std::vector<std::string>& names,
                                  const std::vector<Release>& releases,
                                  Warnings* warnings) {
  std::map<std::string, int> by_name;
  for (const auto& r : releases) by_name.emplace(normalize_version(r.name), r.ordinal);
  std::set<int> out;
  for (const auto& n : names) {
    const auto it = by_name.find(normalize_version(n));
    if (it != by_name.end()) {
      out.insert(it->second);
    } else if (warnings) {
      warnings->push_back("unmatched version '" + n + "' dropped");
    }
  }
  return {out.begin(), out.end()};
}

namespace {

template <typename HasAv>
double availability(const std::vector<Ticket>& tickets, HasAv has_av) {
  std::size_t resolved = 0, with_av = 0;
  for (const auto& t : tickets) {
    if (!is_defect_kind(t.kind) || !t.resolved) continue;
    ++resolved;
    if (has_av(t)) ++with_av;
  }
  if (resolved == 0) throw InputError("no resolved defect tickets");
  return static_cast<double>(with_av) / static_cast<double>(resolved);
}

}  // namespace

double av_availability(const std::vector<Ticket>& tickets) {
  return availability(tickets,
                      [](const Ticket& t) { return !t.affected_versions.empty(); });
}

double av_availability(const std::vector<Ticket>& tickets,
                       const std::vector<Release>& releases) {
  return availability(tickets, [&](const Ticket& t) {
    return !resolve_versions(t.affected_versions, releases).empty();
  });
}

}  // namespace snoring
