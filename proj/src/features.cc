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
#include "snoring/features.h"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace snoring {

const std::array<std::string_view, kFeatureCount>& feature_names() {
  static const std::array<std::string_view, kFeatureCount> names = {
      "size",           "loc_touched",     "nr",            "nfix",
      "nauth",          "loc_added",       "max_loc_added", "avg_loc_added",
      "churn",          "max_churn",       "avg_churn",     "change_set_size",
      "max_change_set", "avg_change_set",  "age",           "weighted_age",
  };
  return names;
}

std::string_view feature_name(Feature feature) {
  return feature_names()[static_cast<std::size_t>(feature)];
}

namespace {

struct Revisions {
  int nr = 0;
  int nfix = 0;
  std::set<std::string> authors;
  double loc_touched = 0, loc_added = 0, max_loc_added = 0;
  double churn = 0, max_churn = 0;
  double change_set = 0, max_change_set = 0;
  double age_weight = 0;

  void add(double added, double deleted, double files, double age, bool fix,
           const std::string& author) {
    const double churn_i = added - deleted;
    max_loc_added = nr ? std::max(max_loc_added, added) : added;
    max_churn = nr ? std::max(max_churn, churn_i) : churn_i;
    max_change_set = nr ? std::max(max_change_set, files) : files;
    ++nr;
    nfix += fix;
    authors.insert(author);
    loc_touched += added + deleted;
    loc_added += added;
    churn += churn_i;
    change_set += files;
    age_weight += age * (added + deleted);
  }
};

}  // namespace

FeatureTable compute_feature_table(const ProjectHistory& history,
                                   const std::vector<DefectRecord>& defects) {
  const auto& commits = history.commits();
  const auto& releases = history.releases();
  const int last = history.post_last_ordinal();

  std::unordered_map<std::string, Instant> fix_visible;
  for (const auto& d : defects) {
    for (const auto& id : d.fix_commits) {
      const auto [it, inserted] = fix_visible.emplace(id, d.fixed_at);
      if (!inserted) it->second = std::min(it->second, d.fixed_at);
    }
  }

  std::map<std::pair<int, std::string>, Revisions> revisions;
  for (std::size_t c = 0; c < commits.size(); ++c) {
    const int r = history.release_ordinal(c);
    if (r >= last) continue;
    const auto& commit = commits[c];
    const auto visible = fix_visible.find(commit.id);
    const bool fix = visible != fix_visible.end() &&
                     visible->second <= releases[static_cast<std::size_t>(r)].date;
    std::map<std::string, std::pair<double, double>> per_class;
    for (std::size_t j = 0; j < commit.changes.size(); ++j) {
      const auto& key = history.class_key(c, j);
      if (key.empty()) continue;
      auto& lines = per_class[key];
      lines.first += static_cast<double>(commit.changes[j].added_lines.size());
      lines.second += static_cast<double>(commit.changes[j].deleted_lines.size());
    }
    const auto files = static_cast<double>(commit.changes.size());
    for (const auto& [key, lines] : per_class) {
      const auto& born = commits[history.class_created(key)].timestamp;
      revisions[{r, key}].add(lines.first, lines.second, files,
                              weeks_between(born, commit.timestamp), fix,
                              commit.author);
    }
  }

  FeatureTable table;
  for (int r = 0; r < last; ++r) {
    const Instant date = releases[static_cast<std::size_t>(r)].date;
    for (const auto& [key, loc] : history.class_universe(r)) {
      FeatureVector v{};
      at(v, Feature::kSize) = loc;
      at(v, Feature::kAge) =
          weeks_between(commits[history.class_created(key)].timestamp, date);
      const auto it = revisions.find({r, key});
      if (it != revisions.end()) {
        const auto& rev = it->second;
        const double n = rev.nr;
        at(v, Feature::kLocTouched) = rev.loc_touched;
        at(v, Feature::kNr) = n;
        at(v, Feature::kNfix) = rev.nfix;
        at(v, Feature::kNauth) = static_cast<double>(rev.authors.size());
        at(v, Feature::kLocAdded) = rev.loc_added;
        at(v, Feature::kMaxLocAdded) = rev.max_loc_added;
        at(v, Feature::kAvgLocAdded) = rev.loc_added / n;
        at(v, Feature::kChurn) = rev.churn;
        at(v, Feature::kMaxChurn) = rev.max_churn;
        at(v, Feature::kAvgChurn) = rev.churn / n;
        at(v, Feature::kChangeSetSize) = rev.change_set;
        at(v, Feature::kMaxChangeSet) = rev.max_change_set;
        at(v, Feature::kAvgChangeSet) = rev.change_set / n;
        at(v, Feature::kWeightedAge) =
            rev.loc_touched > 0 ? rev.age_weight / rev.loc_touched : 0.0;
      }
      table.emplace(std::make_pair(r, key), v);
    }
  }
  return table;
}

FeatureVector compute_features(const std::string& class_path, int release,
                               const ProjectHistory& history,
                               const std::vector<DefectRecord>& defects) {
  if (release < 0 || release >= history.post_last_ordinal() ||
      !history.class_universe(release).count(class_path)) {
    throw InputError(class_path + " is absent from release " + std::to_string(release));
  }
  return compute_feature_table(history, defects).at({release, class_path});
}

}  // namespace snoring
