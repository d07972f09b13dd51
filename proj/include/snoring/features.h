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
// Process measures of a class in one release. Revision aggregates only
// look at commits inside the release interval.
#ifndef SNORING_FEATURES_H_
#define SNORING_FEATURES_H_

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "snoring/history.h"
#include "snoring/szz.h"

namespace snoring {

enum class Feature : std::size_t {
  kSize,
  kLocTouched,
  kNr,
  kNfix,
  kNauth,
  kLocAdded,
  kMaxLocAdded,
  kAvgLocAdded,
  kChurn,
  kMaxChurn,
  kAvgChurn,
  kChangeSetSize,
  kMaxChangeSet,
  kAvgChangeSet,
  kAge,
  kWeightedAge,
};

inline constexpr std::size_t kFeatureCount = 16;

using FeatureVector = std::array<double, kFeatureCount>;

// Column names, in enum order.
const std::array<std::string_view, kFeatureCount>& feature_names();
std::string_view feature_name(Feature feature);

inline double& at(FeatureVector& v, Feature f) { return v[static_cast<std::size_t>(f)]; }
inline double at(const FeatureVector& v, Feature f) {
  return v[static_cast<std::size_t>(f)];
}

// (release ordinal, class) -> features, for every cell of every release.
using FeatureTable = std::map<std::pair<int, std::string>, FeatureVector>;

// All cells at once. `defects` supplies the fix commits counted by nfix; a
// fix counts toward a release once its ticket's last fix commit is no later
// than the release date.
FeatureTable compute_feature_table(const ProjectHistory& history,
                                   const std::vector<DefectRecord>& defects);

// One cell. Throws InputError when the class is absent from the release.
FeatureVector compute_features(const std::string& class_path, int release,
                               const ProjectHistory& history,
                               const std::vector<DefectRecord>& defects);

}  // namespace snoring

#endif  // SNORING_FEATURES_H_
