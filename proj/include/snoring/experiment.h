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
// Batch experiments: snoring vs clean training data (rq1) and the effect of
// dropping non-defective rows from the last training releases (rq2).
#ifndef SNORING_EXPERIMENT_H_
#define SNORING_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snoring/cosmetic.h"
#include "snoring/dataset.h"
#include "snoring/learners.h"
#include "snoring/stats.h"
#include "snoring/synth.h"

namespace snoring {

struct ProjectSource {
  std::string name;
  // Either a git repository or a history.jsonl written by `mine`.
  std::filesystem::path repo;
  std::filesystem::path history_file;
  std::string tag_pattern = ".*";
  // Either an offline issues file or a Jira endpoint (plus key).
  std::filesystem::path issues_file;
  std::string jira_endpoint;
  std::string jira_key;
  std::filesystem::path cache_dir;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::filesystem::path output = "out";
  bool offline = false;

  std::vector<ProjectSource> projects;
  int synth_projects = 0;
  SynthConfig synth;

  std::vector<CosmeticRule> cosmetic_rules = CosmeticFilter::standard().rules();
  double truncate_fraction = 0.5;
  double train_fraction = 0.66;
  std::vector<LearnerKind> classifiers = all_learner_kinds();
  std::vector<int> drop_k = {0, 1, 2, 3, 4};
  int permutation_iterations = 5000;

  // The acceptance batch: ten synthetic projects of 20 releases.
  static ExperimentConfig synthetic_batch();

  // Keys missing from the document keep their defaults. Throws InputError
  // on syntax errors, unknown keys or invalid values.
  static ExperimentConfig parse_toml(std::string_view text);
  static ExperimentConfig load(const std::filesystem::path& file);

  // Every setting, defaults included.
  std::string to_toml() const;

  CosmeticFilter filter() const { return CosmeticFilter(cosmetic_rules); }
};

std::string_view to_string(CosmeticRule rule);
CosmeticRule cosmetic_rule_from_string(std::string_view text);

struct LoadedProject {
  ProjectData data;
  double days_per_release = 0;
  double commits_per_release = 0;
};

// Mines or generates every configured project, synthetic ones first.
std::vector<LoadedProject> load_projects(const ExperimentConfig& config,
                                         Warnings* warnings = nullptr);

struct ProjectSplit {
  Dataset sd;
  Dataset trns;
  Dataset trs;
  Dataset te;  // TeNS
};

ProjectSplit split_project(const ProjectData& project, const ExperimentConfig& config);

struct Evaluation {
  PerformanceReport report;
  ConfusionMatrix cm;
  std::vector<std::string> selected;
};

// CFS on `train`, fit, then score every row of `test`.
Evaluation evaluate(LearnerKind kind, const Dataset& train, const Dataset& test,
                    std::uint64_t seed, TrainedModel* model_out = nullptr,
                    Warnings* warnings = nullptr);

struct ResultRow {
  std::string project;
  std::string classifier;
  std::string variant;
  std::string metric;
  double value = 0;
};

struct StatsRow {
  std::string comparison;
  std::string metric;
  double p_raw = 0;
  double p_holm = 0;
  double delta = 0;
  std::string magnitude;
};

struct ExperimentOutput {
  std::vector<ResultRow> results;
  std::vector<StatsRow> stats;
  Warnings warnings;
};

// Both write results.csv, stats.csv and their extra tables into
// config.output, together with resolved_config.toml and per-project
// intermediates.
ExperimentOutput run_rq1(const ExperimentConfig& config);
ExperimentOutput run_rq2(const ExperimentConfig& config);

void write_results_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& file);
void write_stats_csv(const std::vector<StatsRow>& rows, const std::filesystem::path& file);

}  // namespace snoring

#endif  // SNORING_EXPERIMENT_H_
