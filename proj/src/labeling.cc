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
#include "snoring/labeling.h"

#include <fstream>
#include <set>
#include <utility>

#include "snoring/csv.h"

namespace snoring {

ReleaseRange defect_interval(const IntroductionEstimate& estimate, int fixed) {
  if (estimate.source == IntroductionSource::kUnknown || !estimate.release) {
    throw InputError(estimate.ticket_key + " has no known introduction");
  }
  return {*estimate.release, fixed};
}

std::vector<LabeledCell> label_at(const ProjectHistory& history,
                                  const std::vector<DefectRecord>& defects,
                                  ObservationPoint observation) {
  const auto& releases = history.releases();
  if (releases.empty() || observation.instant < releases.front().date) {
    throw InputError("observation " + format_iso8601(observation.instant) +
                     " precedes the first release");
  }
  std::set<std::pair<int, std::string>> defective;
  for (const auto& d : defects) {
    if (d.fixed_at > observation.instant) continue;
    if (d.introduction.source == IntroductionSource::kUnknown) continue;
    const auto range = defect_interval(d.introduction, d.fixed);
    for (int r = range.begin; r < range.end && r < history.post_last_ordinal(); ++r) {
      for (const auto& c : d.touched_classes) defective.emplace(r, c);
    }
  }
  std::vector<LabeledCell> cells;
  for (int r = 0; r < history.post_last_ordinal(); ++r) {
    for (const auto& [c, loc] : history.class_universe(r)) {
      cells.push_back({c, r, defective.count({r, c}) > 0, observation.instant});
    }
  }
  return cells;
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kTruePositive:
      return "TP";
    case Outcome::kTrueNegative:
      return "TN";
    case Outcome::kFalseNegative:
      return "FN";
  }
  return "?";
}

std::vector<CellAssessment> assess_cells(const std::vector<LabeledCell>& observed,
                                         const std::vector<LabeledCell>& ground) {
  if (observed.size() != ground.size()) {
    throw InputError("labelings cover different cells");
  }
  std::vector<CellAssessment> out;
  out.reserve(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const auto& o = observed[i];
    const auto& g = ground[i];
    if (o.class_path != g.class_path || o.release != g.release) {
      throw InputError("labelings cover different cells");
    }
    if (o.defective && !g.defective) {
      throw InputError(o.class_path + " at release " + std::to_string(o.release) +
                       " is defective only in the observed labeling");
    }
    const Outcome outcome = o.defective   ? Outcome::kTruePositive
                            : g.defective ? Outcome::kFalseNegative
                                          : Outcome::kTrueNegative;
    out.push_back({o.class_path, o.release, outcome});
  }
  return out;
}

double snoring_loss(int ground_defective_count, int observed_defective_count) {
  if (ground_defective_count <= 0) {
    throw DegenerateDataError("snoring loss undefined without defective classes");
  }
  if (observed_defective_count < 0 ||
      observed_defective_count > ground_defective_count) {
    throw InputError("observed defective count outside [0, ground]");
  }
  return static_cast<double>(ground_defective_count - observed_defective_count) /
         ground_defective_count;
}

void write_labels_csv(const std::vector<LabeledCell>& cells,
                      const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  write_csv_row(out, {"class_path", "release_ordinal", "label"});
  for (const auto& c : cells) {
    write_csv_row(out, {c.class_path, std::to_string(c.release), c.defective ? "1" : "0"});
  }
}

}  // namespace snoring
