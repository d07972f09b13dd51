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
// Class-per-release labels as they look from one observation instant. A
// defect is visible only once its fix has landed.
#ifndef SNORING_LABELING_H_
#define SNORING_LABELING_H_

#include <filesystem>
#include <string>
#include <vector>

#include "snoring/history.h"
#include "snoring/szz.h"

namespace snoring {

struct ObservationPoint {
  Instant instant;
};

// Half-open range of release ordinals [begin, end).
struct ReleaseRange {
  int begin = 0;
  int end = 0;

  bool empty() const { return begin >= end; }
  bool contains(int ordinal) const { return begin <= ordinal && ordinal < end; }

  friend bool operator==(const ReleaseRange&, const ReleaseRange&) = default;
};

// Releases in which a defect was latent: [intro, fixed). Throws InputError
// for an unknown introduction.
ReleaseRange defect_interval(const IntroductionEstimate& estimate, int fixed);

struct LabeledCell {
  std::string class_path;
  int release = 0;
  bool defective = false;
  Instant observed_at;

  friend bool operator==(const LabeledCell&, const LabeledCell&) = default;
};

// One cell per (class in the release snapshot, release), ordered by
// (release, class). Throws InputError when the observation precedes the
// first release.
std::vector<LabeledCell> label_at(const ProjectHistory& history,
                                  const std::vector<DefectRecord>& defects,
                                  ObservationPoint observation);

enum class Outcome { kTruePositive, kTrueNegative, kFalseNegative };

std::string_view to_string(Outcome outcome);

struct CellAssessment {
  std::string class_path;
  int release = 0;
  Outcome outcome = Outcome::kTrueNegative;

  friend bool operator==(const CellAssessment&, const CellAssessment&) = default;
};

// Compares a labeling against a later one taken as ground truth. Throws
// InputError when the cell sets differ or a cell is defective only in the
// observed labeling.
std::vector<CellAssessment> assess_cells(const std::vector<LabeledCell>& observed,
                                         const std::vector<LabeledCell>& ground);

// Share of ground-truth defective classes hidden at the observation:
// (ground - observed) / ground. Throws DegenerateDataError when ground is 0.
double snoring_loss(int ground_defective_count, int observed_defective_count);

// labels-<observation>.csv: class_path,release_ordinal,label
void write_labels_csv(const std::vector<LabeledCell>& cells,
                      const std::filesystem::path& file);

}  // namespace snoring

#endif  // SNORING_LABELING_H_
