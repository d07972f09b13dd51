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
// Correlation-based feature selection and six binary classifiers that
// score rows with a defect-proneness in [0, 1].
#ifndef SNORING_LEARNERS_H_
#define SNORING_LEARNERS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "snoring/dataset.h"
#include "snoring/error.h"

namespace snoring {

// Row-major numeric training data with 0/1 labels.
struct Table {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  std::vector<std::string> names;

  std::size_t rows() const { return x.size(); }
  std::size_t columns() const { return names.size(); }
};

Table to_table(const Dataset& d);

// |Pearson correlation|; 0 when either side is constant.
double abs_correlation(const std::vector<double>& a, const std::vector<double>& b);

struct CfsResult {
  std::vector<std::size_t> selected;  // ascending
  double merit = 0;
  // Best single-feature merit seen on the first step.
  double best_single_merit = 0;
};

// Subset merit k*rcf / sqrt(k + k(k-1)*rff) from precomputed correlations.
double cfs_merit(const std::vector<std::size_t>& subset,
                 const std::vector<double>& feature_class,
                 const std::vector<std::vector<double>>& feature_feature);

// Hill climbing from the empty set: each step takes the best single addition
// or deletion, additions first and lower indices first on ties, and stops
// when nothing strictly improves the merit. A single-label table selects
// every feature with a warning.
CfsResult cfs_select(const Table& training, Warnings* warnings = nullptr);

enum class LearnerKind {
  kNaiveBayes,
  kDecisionStump,
  kOneR,
  kIbk1,
  kRandomForest,
  kPrunedTree,
};

std::string_view to_string(LearnerKind kind);
LearnerKind learner_kind_from_string(std::string_view text);
const std::vector<LearnerKind>& all_learner_kinds();

inline constexpr double kDecisionThreshold = 0.5;

struct Prediction {
  double score = 0;
  bool defective = false;
};

// Fitted parameters of one kind, over the selected columns only.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual double score(const std::vector<double>& row) const = 0;
  virtual nlohmann::json parameters() const = 0;
};

inline constexpr int kModelFormatVersion = 1;

class TrainedModel {
 public:
  LearnerKind kind() const { return kind_; }
  const std::vector<std::size_t>& selected() const { return selected_; }
  const std::vector<std::string>& selected_names() const { return selected_names_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t training_rows() const { return rows_; }

  // `row` holds every column of the training table. Throws InputError when
  // a selected column is missing.
  Prediction predict(const std::vector<double>& row) const;

  nlohmann::json to_json() const;
  static TrainedModel from_json(const nlohmann::json& doc);

 private:
  friend TrainedModel train(LearnerKind, const Table&, std::uint64_t,
                            const std::vector<std::size_t>&);

  LearnerKind kind_ = LearnerKind::kNaiveBayes;
  std::vector<std::size_t> selected_;
  std::vector<std::string> selected_names_;
  std::uint64_t seed_ = 0;
  std::size_t rows_ = 0;
  std::shared_ptr<const Classifier> impl_;
};

// Fits `kind` on the `selected` columns. A single-label table yields a
// prior-only model. Throws InputError on an empty table.
TrainedModel train(LearnerKind kind, const Table& training, std::uint64_t seed,
                   const std::vector<std::size_t>& selected);
// Fits on every column; feature selection is the caller's job.
TrainedModel train(LearnerKind kind, const Table& training, std::uint64_t seed);

}  // namespace snoring

#endif  // SNORING_LEARNERS_H_
