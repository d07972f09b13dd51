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

#include <algorithm>
#include <cmath>

#include "snoring/error.h"
#include "snoring/random.h"
#include "snoring/stats.h"

namespace snoring {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

TEST(ConfusionTest, CountsEachCell) {
  const auto cm = confusion({true, true, false, false, true}, {true, false, false, true, true});
  EXPECT_EQ(cm, (ConfusionMatrix{2, 1, 1, 1}));
  EXPECT_THROW(confusion({}, {}), InputError);
  EXPECT_THROW(confusion({true}, {true, false}), InputError);
}

TEST(ScoreTest, HandExample) {
  // tp 20, fp 10, tn 60, fn 10
  const auto r = score({20, 10, 60, 10});
  EXPECT_DOUBLE_EQ(r.precision, 20.0 / 30);
  EXPECT_DOUBLE_EQ(r.recall, 20.0 / 30);
  EXPECT_DOUBLE_EQ(r.f1, 20.0 / 30);
  // po = 0.8, pe = (30*30 + 70*70) / 10000 = 0.58
  EXPECT_NEAR(r.kappa, (0.8 - 0.58) / (1 - 0.58), 1e-15);
  EXPECT_NEAR(r.mcc, (20.0 * 60 - 10.0 * 10) / std::sqrt(30.0 * 30 * 70 * 70), 1e-15);
  EXPECT_TRUE(std::isnan(r.auc));
}

TEST(ScoreTest, UndefinedValuesAreNaN) {
  const auto none_predicted = score({0, 0, 5, 5});
  EXPECT_TRUE(std::isnan(none_predicted.precision));
  EXPECT_DOUBLE_EQ(none_predicted.recall, 0);
  EXPECT_TRUE(std::isnan(none_predicted.f1));
  EXPECT_TRUE(std::isnan(none_predicted.mcc));
  EXPECT_DOUBLE_EQ(none_predicted.kappa, 0);
  const auto all_right = score({3, 0, 0, 0});
  EXPECT_TRUE(std::isnan(all_right.kappa));
  EXPECT_THROW(score({0, 0, 0, 0}), InputError);
}

TEST(ScoreTest, MetricAccessAndNames) {
  const auto r = score({1, 2, 3, 4});
  for (const auto m : all_metrics()) {
    EXPECT_EQ(metric_from_string(to_string(m)), m);
  }
  EXPECT_EQ(r.get(Metric::kRecall), r.recall);
  EXPECT_EQ(r.get(Metric::kMcc), r.mcc);
  EXPECT_THROW(metric_from_string("accuracy"), InputError);
  EXPECT_EQ(all_metrics().size(), 6u);
}

TEST(MccMagnitudeTest, Bands) {
  EXPECT_EQ(mcc_magnitude(0.1), "low");
  EXPECT_EQ(mcc_magnitude(0.3), "fair");
  EXPECT_EQ(mcc_magnitude(0.5), "moderate");
  EXPECT_EQ(mcc_magnitude(0.7), "strong");
  EXPECT_EQ(mcc_magnitude(0.9), "very strong");
}

TEST(AucTest, KnownValues) {
  EXPECT_DOUBLE_EQ(auc({0.1, 0.4, 0.35, 0.8}, {false, false, true, true}), 0.75);
  EXPECT_DOUBLE_EQ(auc({1, 1, 1, 1}, {false, true, false, true}), 0.5);
  EXPECT_DOUBLE_EQ(auc({0.9, 0.1}, {true, false}), 1.0);
  EXPECT_TRUE(std::isnan(auc({0.2, 0.3}, {true, true})));
}

TEST(RelativeLossTest, Definition) {
  EXPECT_DOUBLE_EQ(relative_loss(0.6, 0.8), 0.25);
  EXPECT_DOUBLE_EQ(relative_loss(0.9, 0.6), 0.5);
  EXPECT_TRUE(std::isnan(relative_loss(0.5, 0)));
  EXPECT_TRUE(std::isnan(relative_loss(kNaN, 0.5)));
}

TEST(MidranksTest, TiesShareMeanRank) {
  EXPECT_EQ(midranks({10, 20, 10, 30}), (std::vector<double>{1.5, 3, 1.5, 4}));
  EXPECT_EQ(midranks({5, 5, 5}), (std::vector<double>{2, 2, 2}));
}

TEST(WilcoxonTest, ExactSmallSample) {
  // Differences 1..5 all positive: W+ = 15, p = 2 / 32.
  Pairs pairs;
  for (int i = 1; i <= 5; ++i) pairs.push_back({i, 0});
  const auto r = wilcoxon_signed_rank(pairs);
  EXPECT_DOUBLE_EQ(r.statistic, 15);
  EXPECT_DOUBLE_EQ(r.p_value, 2.0 / 32);
  EXPECT_EQ(r.n, 5u);
}

TEST(WilcoxonTest, DropsZerosAndNaN) {
  const auto r = wilcoxon_signed_rank({{1, 1}, {kNaN, 2}, {3, 1}, {0, 1}, {5, 1}});
  EXPECT_EQ(r.n, 3u);
  EXPECT_THROW(wilcoxon_signed_rank({{1, 1}, {2, 2}}), DegenerateDataError);
}

TEST(WilcoxonTest, NormalApproximationForLargeSamples) {
  // 30 differences, 25 positive: strongly significant; compare with the
  // continuity-corrected z computed here.
  Pairs pairs;
  for (int i = 1; i <= 30; ++i) pairs.push_back({i <= 25 ? i : -i, 0});
  const auto r = wilcoxon_signed_rank(pairs);
  double w = 0;
  for (int i = 1; i <= 25; ++i) w += i;
  const double mean = 30.0 * 31 / 4, var = 30.0 * 31 * 61 / 24;
  const double z = (std::fabs(w - mean) - 0.5) / std::sqrt(var);
  EXPECT_DOUBLE_EQ(r.statistic, w);
  EXPECT_NEAR(r.p_value, std::erfc(z / std::sqrt(2.0)), 1e-12);
}

TEST(WilcoxonTest, SymmetricInSwappingSides) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Pairs a, b;
    for (int i = 0; i < 12; ++i) {
      const double x = std::round(uniform_real(rng) * 10), y = std::round(uniform_real(rng) * 10);
      a.push_back({x, y});
      b.push_back({y, x});
    }
    try {
      EXPECT_NEAR(wilcoxon_signed_rank(a).p_value, wilcoxon_signed_rank(b).p_value, 1e-12);
    } catch (const DegenerateDataError&) {
    }
  }
}

TEST(CliffsDeltaTest, PairedDominance) {
  const auto e = cliffs_delta_paired({{2, 1}, {3, 1}, {1, 1}, {0, 1}});
  EXPECT_DOUBLE_EQ(e.delta, 0.25);
  EXPECT_EQ(e.magnitude, "small");
  EXPECT_EQ(cliffs_delta_paired({{2, 1}, {3, 1}}).magnitude, "large");
  EXPECT_EQ(cliffs_delta_paired({{1, 1}}).magnitude, "negligible");
  EXPECT_THROW(cliffs_delta_paired({}), InputError);
}

TEST(HolmTest, HandExample) {
  const auto adjusted = holm_adjust({0.01, 0.02, 0.03});
  EXPECT_NEAR(adjusted[0], 0.03, 1e-15);
  EXPECT_NEAR(adjusted[1], 0.04, 1e-15);
  EXPECT_NEAR(adjusted[2], 0.04, 1e-15);
}

TEST(HolmTest, KeepsInputOrderAndCaps) {
  const auto adjusted = holm_adjust({0.5, 0.001, 0.4});
  EXPECT_NEAR(adjusted[1], 0.003, 1e-15);
  EXPECT_NEAR(adjusted[2], 0.8, 1e-15);
  EXPECT_NEAR(adjusted[0], 0.8, 1e-15);
  EXPECT_EQ(holm_adjust({0.9, 0.8}), (std::vector<double>{1.0, 1.0}));
  EXPECT_TRUE(holm_adjust({}).empty());
}

TEST(HolmTest, MonotoneAndNeverBelowRaw) {
  Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> p(1 + uniform_index(rng, 12));
    for (auto& v : p) v = uniform_real(rng);
    const auto adj = holm_adjust(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_GE(adj[i], p[i]);
      EXPECT_LE(adj[i], 1.0);
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[i] <= p[j]) {
          EXPECT_LE(adj[i], adj[j]);
        }
      }
    }
  }
}

TEST(SpearmanTest, PerfectAndConstant) {
  const auto up = spearman({1, 2, 3, 4}, {10, 20, 30, 40});
  EXPECT_DOUBLE_EQ(up.statistic, 1);
  EXPECT_DOUBLE_EQ(up.p_value, 0);
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {4, 3, 2, 1}).statistic, -1);
  EXPECT_TRUE(std::isnan(spearman({1, 1, 1}, {1, 2, 3}).statistic));
  EXPECT_THROW(spearman({1, 2}, {1, 2}), InputError);
}

// Two-sided Student t tail by Simpson integration of the density.
double t_two_sided(double t, double df) {
  const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) /
                   std::sqrt(df * M_PI);
  auto pdf = [&](double x) { return c * std::pow(1 + x * x / df, -(df + 1) / 2); };
  const int n = 4000;
  const double h = std::fabs(t) / n;
  double sum = pdf(0) + pdf(std::fabs(t));
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4 : 2) * pdf(i * h);
  return 1 - 2 * sum * h / 3;
}

TEST(SpearmanTest, RankPearsonAndTailOracle) {
  const std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<double> y = {3, 1, 2, 7, 4, 10, 5, 6, 9, 8};
  const auto r = spearman(x, y);
  // No ties: rho = 1 - 6 sum d^2 / (n (n^2 - 1)), sum d^2 = 44.
  EXPECT_NEAR(r.statistic, 1 - 6 * 44.0 / 990, 1e-12);
  const double t = r.statistic * std::sqrt(8 / (1 - r.statistic * r.statistic));
  EXPECT_NEAR(r.p_value, t_two_sided(t, 8), 1e-9);
}

std::vector<Measurement> block_design(double effect, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Measurement> m;
  for (int p = 0; p < 8; ++p) {
    const double base = uniform_real(rng) * 5;
    for (const char* c : {"a", "b", "c"}) {
      for (int k = 0; k < 4; ++k) {
        m.push_back({"p" + std::to_string(p), c, k,
                     base + effect * k + 0.3 * (uniform_real(rng) - 0.5)});
      }
    }
  }
  return m;
}

TEST(PermutationTest, DetectsPlantedFactor) {
  const auto r = permutation_test_repeated(block_design(0.5, 1), 500, 7);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].factor, "drop_count");
  EXPECT_LT(r[0].p_value, 0.01);
  EXPECT_EQ(r[0].iterations, 500);
  EXPECT_EQ(r[1].factor, "classifier");
}

TEST(PermutationTest, NullPValuesAreRoughlyUniform) {
  int rejections = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const auto r = permutation_test_repeated(block_design(0, 100 + t), 200, t,
                                             {"drop_count"});
    rejections += r[0].p_value < 0.05;
  }
  EXPECT_LE(rejections, 12);
}

TEST(PermutationTest, SingleIterationAndDeterminism) {
  const auto design = block_design(0.2, 3);
  const auto once = permutation_test_repeated(design, 1, 5);
  EXPECT_TRUE(once[0].p_value == 0 || once[0].p_value == 1);
  const auto a = permutation_test_repeated(design, 100, 5);
  const auto b = permutation_test_repeated(design, 100, 5);
  EXPECT_EQ(a[0].p_value, b[0].p_value);
  EXPECT_EQ(a[0].statistic, b[0].statistic);
}

TEST(PermutationTest, RejectsDegenerateDesigns) {
  std::vector<Measurement> one_project = {{"p", "a", 0, 1}, {"p", "a", 1, 2}};
  EXPECT_THROW(permutation_test_repeated(one_project, 10, 1), InputError);
  std::vector<Measurement> one_level = {{"p", "a", 0, 1}, {"q", "a", 0, 2}};
  EXPECT_THROW(permutation_test_repeated(one_level, 10, 1, {"drop_count"}), InputError);
}

}  // namespace
}  // namespace snoring
