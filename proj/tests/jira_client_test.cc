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
#include <gtest/gtest.h>

#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "snoring/error.h"
#include "snoring/jira_client.h"
#include "support/fixtures.h"

namespace snoring {
namespace {

using nlohmann::json;

// Serves `issue_count` bugs of project PROJ under /jira, failing the first
// `failures` requests with `failure_status`.
class FakeJira {
 public:
  FakeJira(int issue_count, int failures = 0, int failure_status = 503)
      : issue_count_(issue_count), failures_left_(failures), failure_status_(failure_status) {
    server_.Get("/jira/rest/api/2/search", [this](const httplib::Request& req,
                                                  httplib::Response& res) {
      {
        std::lock_guard<std::mutex> lock(mu_);
        ++requests_;
        jql_ = req.get_param_value("jql");
        auth_ = req.get_header_value("Authorization");
      }
      if (failures_left_ > 0) {
        --failures_left_;
        res.status = failure_status_;
        return;
      }
      const int start = std::stoi(req.get_param_value("startAt"));
      const int max = std::stoi(req.get_param_value("maxResults"));
      json issues = json::array();
      for (int i = start; i < std::min(start + max, issue_count_); ++i) {
        issues.push_back({{"key", "PROJ-" + std::to_string(i + 1)},
                          {"fields",
                           {{"issuetype", {{"name", "Bug"}}},
                            {"created", "2019-01-01T00:00:00.000+0000"},
                            {"resolutiondate", "2019-02-01T00:00:00.000+0000"},
                            {"versions", json::array({{{"name", "1.0"}}})},
                            {"fixVersions", json::array()},
                            {"status", {{"name", "Closed"}}}}}});
      }
      res.set_content(json{{"startAt", start}, {"maxResults", max}, {"total", issue_count_},
                           {"issues", issues}}
                          .dump(),
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeJira() {
    server_.stop();
    thread_.join();
  }
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/jira/"; }
  int requests() const {
    std::lock_guard<std::mutex> lock(mu_);
    return requests_;
  }
  std::string jql() const {
    std::lock_guard<std::mutex> lock(mu_);
    return jql_;
  }
  std::string auth() const {
    std::lock_guard<std::mutex> lock(mu_);
    return auth_;
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  int issue_count_;
  std::atomic<int> failures_left_;
  int failure_status_;
  mutable std::mutex mu_;
  int requests_ = 0;
  std::string jql_, auth_;
};

JiraFetchOptions fast_options() {
  JiraFetchOptions o;
  o.page_size = 10;
  o.initial_backoff = std::chrono::milliseconds(1);
  return o;
}

TEST(JiraClientTest, PagesThroughResults) {
  FakeJira jira(25);
  auto options = fast_options();
  options.token = "secret";
  const auto tickets = fetch_issues(jira.endpoint(), "PROJ", options);
  ASSERT_EQ(tickets.size(), 25u);
  EXPECT_EQ(tickets.front().key, "PROJ-1");
  EXPECT_EQ(tickets.back().key, "PROJ-25");
  EXPECT_EQ(jira.requests(), 3);
  EXPECT_EQ(jira.jql(), bug_query("PROJ"));
  EXPECT_EQ(jira.auth(), "Bearer secret");
}

TEST(JiraClientTest, EmptyProjectTakesOneRequest) {
  FakeJira jira(0);
  EXPECT_TRUE(fetch_issues(jira.endpoint(), "PROJ", fast_options()).empty());
  EXPECT_EQ(jira.requests(), 1);
}

TEST(JiraClientTest, RetriesServerErrors) {
  FakeJira jira(5, 2, 503);
  const auto tickets = fetch_issues(jira.endpoint(), "PROJ", fast_options());
  EXPECT_EQ(tickets.size(), 5u);
  EXPECT_EQ(jira.requests(), 3);
}

TEST(JiraClientTest, RetriesRateLimitUntilGivingUp) {
  FakeJira jira(5, 100, 429);
  auto options = fast_options();
  options.max_attempts = 3;
  EXPECT_THROW(fetch_issues(jira.endpoint(), "PROJ", options), InputError);
  EXPECT_EQ(jira.requests(), 3);
}

TEST(JiraClientTest, ClientErrorsFailImmediately) {
  FakeJira jira(5, 1, 404);
  EXPECT_THROW(fetch_issues(jira.endpoint(), "PROJ", fast_options()), InputError);
  EXPECT_EQ(jira.requests(), 1);
}

TEST(JiraClientTest, TransportFailureThrows) {
  auto options = fast_options();
  options.max_attempts = 2;
  // Port 1 on loopback refuses connections.
  EXPECT_THROW(fetch_issues("http://127.0.0.1:1", "PROJ", options), InputError);
  EXPECT_THROW(fetch_issues("not a url", "PROJ", options), InputError);
}

TEST(JiraClientTest, CachedPagesReplayOffline) {
  testing::TempDir dir;
  std::vector<Ticket> online;
  {
    FakeJira jira(23);
    auto options = fast_options();
    options.cache_dir = dir.path();
    online = fetch_issues(jira.endpoint(), "PROJ", options);
  }
  EXPECT_TRUE(std::filesystem::exists(dir / "PROJ/issues/page-0.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "PROJ/issues/page-2.json"));
  EXPECT_EQ(load_cached_issues(dir.path(), "PROJ"), online);
  EXPECT_THROW(load_cached_issues(dir.path(), "OTHER"), InputError);
}

TEST(JiraClientTest, MalformedCachedPageIsSkipped) {
  testing::TempDir dir;
  std::filesystem::create_directories(dir / "PROJ/issues");
  {
    std::ofstream(dir / "PROJ/issues/page-0.json") << "<html>";
    std::ofstream(dir / "PROJ/issues/page-1.json")
        << R"({"issues": [{"key": "PROJ-4", "fields": {"issuetype": {"name": "Bug"},
              "created": "2019-01-01"}}]})";
  }
  Warnings warnings;
  const auto tickets = load_cached_issues(dir.path(), "PROJ", &warnings);
  ASSERT_EQ(tickets.size(), 1u);
  EXPECT_EQ(tickets[0].key, "PROJ-4");
  EXPECT_EQ(warnings.size(), 1u);
}

}  // namespace
}  // namespace snoring
