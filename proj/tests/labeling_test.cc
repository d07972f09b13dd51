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

#include <fstream>
#include <sstream>

#include "snoring/error.h"
#include "snoring/labeling.h"
#include "snoring/szz.h"
#include "support/fixtures.h"

namespace snoring {
namespace {

using testing::day;
using testing::label_of;
using testing::outcome_of;

IntroductionEstimate at(int release) {
  return {"PROJ-1", release, IntroductionSource::kAffectedVersion};
}

TEST(DefectIntervalTest, LatentUntilFixedRelease) {
  EXPECT_EQ(defect_interval(at(0), 2), (ReleaseRange{0, 2}));
  EXPECT_TRUE(defect_interval(at(0), 0).empty());
  EXPECT_TRUE(defect_interval(at(3), 3).empty());
  EXPECT_TRUE(defect_interval(at(0), 2).contains(1));
  EXPECT_FALSE(defect_interval(at(0), 2).contains(2));
  EXPECT_THROW(defect_interval({"PROJ-1", std::nullopt, IntroductionSource::kUnknown}, 2),
               InputError);
}

class ThreeReleaseTest : public ::testing::Test {
 protected:
  void SetUp() override {
    scenario_ = testing::three_release_scenario();
    defects_ = resolve_defects(scenario_.history, scenario_.tickets);
  }
  std::vector<LabeledCell> label(int release) const {
    return label_at(scenario_.history, defects_,
                    {scenario_.history.releases()[static_cast<std::size_t>(release)].date});
  }
  testing::ThreeReleaseScenario scenario_;
  std::vector<DefectRecord> defects_;
};

TEST_F(ThreeReleaseTest, ResolvesEveryDefect) {
  ASSERT_EQ(defects_.size(), 5u);
  for (const auto& d : defects_) {
    EXPECT_EQ(d.introduction.source, IntroductionSource::kAffectedVersion) << d.ticket_key;
    EXPECT_EQ(d.touched_classes.size(), 1u) << d.ticket_key;
  }
}

TEST_F(ThreeReleaseTest, LabelsObservedAtSecondRelease) {
  const auto cells = label(1);
  EXPECT_FALSE(label_of(cells, "src/C1.java", 0));
  EXPECT_FALSE(label_of(cells, "src/C2.java", 0));
  EXPECT_TRUE(label_of(cells, "src/C3.java", 0));
}

TEST_F(ThreeReleaseTest, LabelsObservedAtThirdRelease) {
  const auto cells = label(2);
  EXPECT_FALSE(label_of(cells, "src/C1.java", 0));
  EXPECT_TRUE(label_of(cells, "src/C2.java", 0));
  EXPECT_TRUE(label_of(cells, "src/C3.java", 0));
  EXPECT_TRUE(label_of(cells, "src/C1.java", 1));
  EXPECT_TRUE(label_of(cells, "src/C2.java", 1));
  EXPECT_TRUE(label_of(cells, "src/C3.java", 1));
}

TEST_F(ThreeReleaseTest, OutcomesAgainstGroundTruth) {
  const auto ground = label(2);
  const auto early = assess_cells(label(1), ground);
  EXPECT_EQ(outcome_of(early, "src/C1.java", 0), Outcome::kTrueNegative);
  EXPECT_EQ(outcome_of(early, "src/C2.java", 0), Outcome::kFalseNegative);
  EXPECT_EQ(outcome_of(early, "src/C3.java", 0), Outcome::kTruePositive);
  const auto late = assess_cells(ground, ground);
  EXPECT_EQ(outcome_of(late, "src/C1.java", 0), Outcome::kTrueNegative);
  EXPECT_EQ(outcome_of(late, "src/C2.java", 0), Outcome::kTruePositive);
  EXPECT_EQ(outcome_of(late, "src/C3.java", 0), Outcome::kTruePositive);
  for (int r = 0; r < 2; ++r) {
    for (const auto* c : {"src/C1.java", "src/C2.java", "src/C3.java"}) {
      if (r == 0 && std::string(c) == "src/C1.java") continue;
      EXPECT_EQ(outcome_of(late, c, r), Outcome::kTruePositive);
    }
  }
}

TEST_F(ThreeReleaseTest, LaterObservationOnlyAddsDefectiveLabels) {
  const auto early = label(0), mid = label(1), late = label(2);
  for (std::size_t i = 0; i < early.size(); ++i) {
    EXPECT_LE(early[i].defective, mid[i].defective);
    EXPECT_LE(mid[i].defective, late[i].defective);
  }
}

TEST_F(ThreeReleaseTest, CellsOrderedByReleaseThenClass) {
  const auto cells = label(2);
  ASSERT_EQ(cells.size(), 9u);
  for (std::size_t i = 1; i < cells.size(); ++i) {
    EXPECT_LT(std::make_pair(cells[i - 1].release, cells[i - 1].class_path),
              std::make_pair(cells[i].release, cells[i].class_path));
  }
}

TEST_F(ThreeReleaseTest, ObservationBeforeFirstReleaseThrows) {
  EXPECT_THROW(label_at(scenario_.history, defects_, {day(0)}), InputError);
}

TEST_F(ThreeReleaseTest, SnoringLossOfEarlyObservation) {
  int ground = 0, observed = 0;
  const auto g = label(2), o = label(1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].release != 0) continue;
    ground += g[i].defective;
    observed += o[i].defective;
  }
  EXPECT_DOUBLE_EQ(snoring_loss(ground, observed), 0.5);
}

TEST_F(ThreeReleaseTest, WritesLabelsCsv) {
  testing::TempDir dir;
  write_labels_csv(label(1), dir / "labels.csv");
  std::ifstream in(dir / "labels.csv");
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str().rfind("class_path,release_ordinal,label\nsrc/C1.java,0,0\n", 0), 0u);
}

TEST(AssessCellsTest, RejectsMismatchedOrImpossibleLabelings) {
  const std::vector<LabeledCell> ground = {{"A.java", 0, false, day(1)}};
  const std::vector<LabeledCell> positive = {{"A.java", 0, true, day(1)}};
  const std::vector<LabeledCell> other = {{"B.java", 0, false, day(1)}};
  EXPECT_THROW(assess_cells(positive, ground), InputError);
  EXPECT_THROW(assess_cells(other, ground), InputError);
  EXPECT_THROW(assess_cells({}, ground), InputError);
}

TEST(SnoringLossTest, Definition) {
  EXPECT_DOUBLE_EQ(snoring_loss(10, 7), 0.3);
  EXPECT_DOUBLE_EQ(snoring_loss(4, 4), 0.0);
  EXPECT_THROW(snoring_loss(0, 0), DegenerateDataError);
  EXPECT_THROW(snoring_loss(3, 4), InputError);
}

}  // namespace
}  // namespace snoring
