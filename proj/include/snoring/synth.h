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
// Synthetic projects with planted defects of known lifetime. Each defect is
// a line added by its introducing commit and removed by its fix, so both
// affected versions and blame recover it. About 40% of the classes exist
// from the initial import; the rest appear in later releases.
#ifndef SNORING_SYNTH_H_
#define SNORING_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "snoring/history.h"
#include "snoring/tickets.h"

namespace snoring {

struct SynthConfig {
  std::string name = "SYNTH";  // also the ticket key prefix
  int releases = 20;
  int classes = 150;
  double commits_per_release = 75;
  double defect_rate = 7.5;  // defects introduced per release, mean
  // Geometric dormancy (at least one release) with mean
  // dormancy_fraction * releases.
  double dormancy_fraction = 0.2;
  double av_availability = 0.5;
  // Extra activity on classes while they hold a latent defect: touch weight
  // and line-count multiplier.
  double signal = 1.0;
  double release_spacing_days = 30;
  std::uint64_t seed = 1;

  // Throws InputError on an invalid combination.
  void validate() const;
};

struct GroundTruthDefect {
  std::string ticket_key;
  std::string class_path;
  int intro = 0;
  int fixed = 0;

  friend bool operator==(const GroundTruthDefect&, const GroundTruthDefect&) = default;
};

struct SynthProject {
  ProjectHistory history;
  std::vector<Ticket> tickets;
  std::vector<GroundTruthDefect> ground_truth;
};

SynthProject generate(const SynthConfig& config);

// history.jsonl, issues.json and ground_truth.csv under `dir`.
void write_synth_project(const SynthProject& project, const std::filesystem::path& dir);

void write_ground_truth_csv(const std::vector<GroundTruthDefect>& defects,
                            const std::filesystem::path& file);

}  // namespace snoring

#endif  // SNORING_SYNTH_H_
