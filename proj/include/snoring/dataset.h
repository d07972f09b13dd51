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
// Release-ordered datasets and the transformations between them: full
// dataset, truncated dataset, ordered train/test split, the two training
// views and the tail-dropping countermeasure.
#ifndef SNORING_DATASET_H_
#define SNORING_DATASET_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snoring/features.h"
#include "snoring/history.h"
#include "snoring/labeling.h"
#include "snoring/szz.h"
#include "snoring/tickets.h"

namespace snoring {

struct DatasetRow {
  std::string class_path;
  int release = 0;
  FeatureVector features{};
  bool defective = false;

  friend bool operator==(const DatasetRow&, const DatasetRow&) = default;
};

struct Dataset {
  // Ordered by (release, class_path).
  std::vector<DatasetRow> rows;
  // Releases the dataset spans, in order.
  std::vector<Release> releases;
  std::optional<Instant> observation;
  std::vector<std::string> transformations;
  // Input name -> content hash.
  std::map<std::string, std::string> source_hashes;

  int release_count() const { return static_cast<int>(releases.size()); }
  std::size_t defective_count() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Everything the dataset stage needs about one project, computed once.
struct ProjectData {
  std::string name;
  ProjectHistory history;
  std::vector<DefectRecord> defects;
  FeatureTable features;
  std::map<std::string, std::string> source_hashes;

  static ProjectData build(std::string name, ProjectHistory history,
                           const std::vector<Ticket>& tickets,
                           const CosmeticFilter& filter = CosmeticFilter::standard(),
                           Warnings* warnings = nullptr);
};

// 64-bit FNV-1a, as 16 hex digits.
std::string content_hash(std::string_view bytes);

// Dataset D: every cell of every release, labeled at `observation`.
Dataset assemble(const ProjectData& project, ObservationPoint observation);

// Labels of `d`'s rows as seen at `observation`; rows and features kept.
Dataset relabel(const Dataset& d, const ProjectData& project,
                ObservationPoint observation);

// SD: keeps the first ceil(R * (1 - fraction)) releases. Needs R >= 4.
Dataset truncate_recent(const Dataset& d, double fraction = 0.5);

// Keeps releases [0, count).
Dataset keep_releases(const Dataset& d, int count, const std::string& step);

struct Holdout {
  Dataset train;
  Dataset test;
};

// Release-boundary split: the first ceil(R * train_fraction) releases train,
// the rest test. Needs R >= 3.
Holdout ordered_holdout(const Dataset& sd, double train_fraction = 0.66);

struct TrainingViews {
  Dataset no_snoring;  // TrNS: labeled at the end of the project
  Dataset snoring;     // TrS: labeled at the date of the last training release
};

TrainingViews training_views(const ProjectData& project, const Dataset& train);

// TrS-k: drops non-defective rows of the last k releases.
Dataset drop_nondefective_tail(const Dataset& trs, int k);

// dataset.csv plus a sidecar <stem>.meta.json holding releases and
// provenance.
void export_csv(const Dataset& d, const std::filesystem::path& file);
Dataset import_csv(const std::filesystem::path& file);

std::filesystem::path meta_path(const std::filesystem::path& csv_file);

}  // namespace snoring

#endif  // SNORING_DATASET_H_
