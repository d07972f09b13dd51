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
#include "snoring/jira_client.h"

#include <fstream>
#include <iterator>
#include <thread>

#include "httplib.h"

namespace snoring {

using nlohmann::json;

namespace {

std::string percent_encode(std::string_view s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (const char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += ch;
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string base;    // path prefix without trailing slash
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw InputError("endpoint must be an http(s) URL: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  Endpoint e;
  e.origin = url.substr(0, path_start);
  e.base = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!e.base.empty() && e.base.back() == '/') e.base.pop_back();
  return e;
}

std::filesystem::path page_file(const std::filesystem::path& cache_dir,
                                const std::string& project, int page) {
  return cache_dir / project / "issues" / ("page-" + std::to_string(page) + ".json");
}

}  // namespace

std::string bug_query(const std::string& project_key) {
  return "project = " + project_key + " AND issuetype = Bug ORDER BY key ASC";
}

std::vector<Ticket> fetch_issues(const std::string& endpoint,
                                 const std::string& project_key,
                                 const JiraFetchOptions& options,
                                 Warnings* warnings) {
  if (options.page_size <= 0 || options.max_attempts <= 0) {
    throw InputError("page size and attempt count must be positive");
  }
  const Endpoint ep = split_endpoint(endpoint);
  httplib::Client client(ep.origin);
  client.set_connection_timeout(10);
  client.set_read_timeout(60);
  client.set_follow_location(true);
  httplib::Headers headers = {{"Accept", "application/json"}};
  if (!options.token.empty()) {
    headers.emplace("Authorization", "Bearer " + options.token);
  }
  if (options.cache_dir) {
    std::filesystem::create_directories(*options.cache_dir / project_key / "issues");
  }

  json all = json::array();
  int start = 0;
  int total = -1;
  for (int page = 0;; ++page) {
    const std::string path =
        ep.base + "/rest/api/2/search?jql=" + percent_encode(bug_query(project_key)) +
        "&startAt=" + std::to_string(start) +
        "&maxResults=" + std::to_string(options.page_size) +
        "&fields=" + percent_encode("key,issuetype,created,resolutiondate,versions,"
                                    "fixVersions,status");
    std::string body;
    auto backoff = options.initial_backoff;
    for (int attempt = 1;; ++attempt) {
      auto res = client.Get(path, headers);
      std::string failure;
      if (!res) {
        failure = "transport error: " + httplib::to_string(res.error());
      } else if (res->status == 429 || res->status >= 500) {
        failure = "HTTP " + std::to_string(res->status);
      } else if (res->status != 200) {
        throw InputError("issue search failed with HTTP " +
                         std::to_string(res->status) + " for " + project_key);
      } else {
        body = res->body;
        break;
      }
      if (attempt >= options.max_attempts) {
        throw InputError("issue search for " + project_key + " failed after " +
                         std::to_string(attempt) + " attempts: " + failure);
      }
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    if (options.cache_dir) {
      std::ofstream out(page_file(*options.cache_dir, project_key, page),
                        std::ios::binary);
      out << body;
    }
    json parsed;
    try {
      parsed = json::parse(body);
    } catch (const json::parse_error&) {
      parsed = nullptr;
    }
    if (!parsed.is_object() || !parsed.contains("issues") ||
        !parsed.at("issues").is_array()) {
      if (warnings) {
        warnings->push_back("malformed search page " + std::to_string(page) +
                            " for " + project_key + " skipped");
      }
      start += options.page_size;
      if (total < 0 || start >= total) break;
      continue;
    }
    const auto& issues = parsed.at("issues");
    for (const auto& issue : issues) all.push_back(issue);
    total = parsed.value("total", 0);
    start += static_cast<int>(issues.size());
    if (issues.empty() || start >= total) break;
  }
  return normalize_issues(all, warnings);
}

std::vector<Ticket> load_cached_issues(const std::filesystem::path& cache_dir,
                                       const std::string& project_key,
                                       Warnings* warnings) {
  json all = json::array();
  for (int page = 0;; ++page) {
    const auto file = page_file(cache_dir, project_key, page);
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      if (page == 0) throw InputError("no cached issue pages under " + cache_dir.string());
      break;
    }
    const std::string body{std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>()};
    const json parsed = json::parse(body, nullptr, /*allow_exceptions=*/false);
    if (!parsed.is_object() || !parsed.contains("issues") ||
        !parsed.at("issues").is_array()) {
      if (warnings) warnings->push_back("malformed cached page " + file.string() + " skipped");
      continue;
    }
    for (const auto& issue : parsed.at("issues")) all.push_back(issue);
  }
  return normalize_issues(all, warnings);
}

}  // namespace snoring
