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

#include <cmath>

#include "snoring/error.h"
#include "snoring/learners.h"
#include "support/fixtures.h"

namespace snoring {
namespace {

double accuracy(const TrainedModel& model, const Table& test) {
  std::size_t right = 0;
  for (std::size_t i = 0; i < test.rows(); ++i) {
    right += model.predict(test.x[i]).defective == (test.y[i] == 1);
  }
  return static_cast<double>(right) / static_cast<double>(test.rows());
}

TEST(CorrelationTest, AbsolutePearson) {
  EXPECT_DOUBLE_EQ(abs_correlation({1, 2, 3}, {6, 4, 2}), 1.0);
  EXPECT_DOUBLE_EQ(abs_correlation({1, 2, 3}, {5, 5, 5}), 0.0);
  // x = {1,2,3,4}, y = {1,3,2,4}: sxy = 4, sxx = syy = 5.
  EXPECT_NEAR(abs_correlation({1, 2, 3, 4}, {1, 3, 2, 4}), 0.8, 1e-15);
}

TEST(CfsTest, MeritFormula) {
  const std::vector<double> rcf = {0.6, 0.4, 0.2};
  const std::vector<std::vector<double>> rff = {{1, 0.5, 0.1}, {0.5, 1, 0.3}, {0.1, 0.3, 1}};
  EXPECT_DOUBLE_EQ(cfs_merit({0}, rcf, rff), 0.6);
  EXPECT_NEAR(cfs_merit({0, 1}, rcf, rff), 2 * 0.5 / std::sqrt(2 + 2 * 0.5), 1e-15);
  EXPECT_NEAR(cfs_merit({0, 1, 2}, rcf, rff), 3 * 0.4 / std::sqrt(3 + 6 * 0.3), 1e-15);
  EXPECT_EQ(cfs_merit({}, rcf, rff), 0.0);
}

TEST(CfsTest, PlantedFamilySelectedOnce) {
  int exactly_one = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto r = cfs_select(testing::planted_cfs_table(300, seed));
    int family = 0;
    for (const auto i : r.selected) family += i < 3;
    exactly_one += family == 1;
    EXPECT_TRUE(std::is_sorted(r.selected.begin(), r.selected.end()));
    EXPECT_GT(r.merit, 0);
  }
  EXPECT_GE(exactly_one, 95);
}

TEST(CfsTest, SingleLabelSelectsEverythingWithWarning) {
  Table t;
  t.names = {"a", "b"};
  t.x = {{1, 2}, {3, 4}};
  t.y = {0, 0};
  Warnings warnings;
  const auto r = cfs_select(t, &warnings);
  EXPECT_EQ(r.selected, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(LearnersTest, KindNamesRoundTrip) {
  EXPECT_EQ(all_learner_kinds().size(), 6u);
  for (const auto k : all_learner_kinds()) {
    EXPECT_EQ(learner_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(learner_kind_from_string("svm"), InputError);
}

TEST(LearnersTest, SeparableBenchmark) {
  const auto train_set = testing::separable_table(400, 1);
  const auto test_set = testing::separable_table(400, 2);
  for (const auto kind : all_learner_kinds()) {
    const auto model = train(kind, train_set, 42, {0, 1});
    EXPECT_GE(accuracy(model, test_set), 0.95) << to_string(kind);
  }
}

TEST(LearnersTest, NaiveBayesHandComputedPosterior) {
  // Class 0 at x = 1, 3 (mean 2, variance 1); class 1 at x = 5, 9 (mean 7,
  // variance 4); equal priors. At x = 2:
  //   p(x|0) = 1 / sqrt(2 pi), p(x|1) = exp(-25/8) / sqrt(8 pi)
  //   P(1|x) = 0.5 e^{-25/8} / (1 + 0.5 e^{-25/8})
  Table t;
  t.names = {"x"};
  t.x = {{1}, {3}, {5}, {9}};
  t.y = {0, 0, 1, 1};
  const auto model = train(LearnerKind::kNaiveBayes, t, 1, {0});
  const double e = 0.5 * std::exp(-25.0 / 8);
  EXPECT_NEAR(model.predict({2}).score, e / (1 + e), 1e-9);
  EXPECT_FALSE(model.predict({2}).defective);
  EXPECT_TRUE(model.predict({7}).defective);
}

TEST(LearnersTest, SingleLabelYieldsPriorOnlyModel) {
  Table t;
  t.names = {"x"};
  t.x = {{1}, {2}, {3}};
  t.y = {1, 1, 1};
  for (const auto kind : all_learner_kinds()) {
    const auto model = train(kind, t, 1, {0});
    EXPECT_DOUBLE_EQ(model.predict({100}).score, 1.0) << to_string(kind);
  }
  Table empty;
  empty.names = {"x"};
  EXPECT_THROW(train(LearnerKind::kOneR, empty, 1, {0}), InputError);
}

TEST(LearnersTest, DeterministicForSeedAndJsonRoundTrip) {
  const auto train_set = testing::separable_table(200, 5);
  const auto probe = testing::separable_table(50, 6);
  for (const auto kind : all_learner_kinds()) {
    const auto a = train(kind, train_set, 9, {0, 1});
    const auto b = train(kind, train_set, 9, {0, 1});
    EXPECT_EQ(a.to_json(), b.to_json()) << to_string(kind);
    const auto back = TrainedModel::from_json(nlohmann::json::parse(a.to_json().dump()));
    EXPECT_EQ(back.kind(), kind);
    EXPECT_EQ(back.selected(), a.selected());
    EXPECT_EQ(back.selected_names(), (std::vector<std::string>{"x0", "x1"}));
    EXPECT_EQ(back.seed(), 9u);
    EXPECT_EQ(back.training_rows(), 200u);
    for (const auto& row : probe.x) {
      EXPECT_EQ(back.predict(row).score, a.predict(row).score) << to_string(kind);
    }
  }
}

TEST(LearnersTest, RejectsBadModelDocuments) {
  const auto model = train(LearnerKind::kDecisionStump, testing::separable_table(50, 1), 1);
  auto doc = model.to_json();
  doc["version"] = kModelFormatVersion + 1;
  EXPECT_THROW(TrainedModel::from_json(doc), InputError);
  EXPECT_THROW(TrainedModel::from_json(nlohmann::json::object()), InputError);
}

TEST(LearnersTest, PredictNeedsSelectedColumns) {
  const auto model = train(LearnerKind::kNaiveBayes, testing::separable_table(50, 1), 1, {1});
  EXPECT_THROW(model.predict({0.5}), InputError);
  EXPECT_NO_THROW(model.predict({0.5, 0.1}));
}

TEST(LearnersTest, DefaultTrainUsesEveryColumn) {
  const auto t = testing::planted_cfs_table(300, 3);
  const auto model = train(LearnerKind::kNaiveBayes, t, 1);
  EXPECT_EQ(model.selected(), (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(model.selected_names(), t.names);
}

TEST(LearnersTest, ScoresAreProbabilities) {
  const auto t = testing::planted_cfs_table(300, 4);
  for (const auto kind : all_learner_kinds()) {
    const auto model = train(kind, t, 3);
    for (const auto& row : t.x) {
      const auto p = model.predict(row);
      EXPECT_GE(p.score, 0);
      EXPECT_LE(p.score, 1);
      EXPECT_EQ(p.defective, p.score >= kDecisionThreshold) << to_string(kind);
    }
  }
}

}  // namespace
}  // namespace snoring
