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
// Classification metrics and the tests used to compare them.
#ifndef SNORING_STATS_H_
#define SNORING_STATS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "snoring/error.h"

namespace snoring {

struct ConfusionMatrix {
  long tp = 0, fp = 0, tn = 0, fn = 0;

  long total() const { return tp + fp + tn + fn; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Throws InputError on empty or mismatched inputs.
ConfusionMatrix confusion(const std::vector<bool>& predicted,
                          const std::vector<bool>& truth);

enum class Metric { kPrecision, kRecall, kF1, kKappa, kMcc, kAuc };

std::string_view to_string(Metric metric);
Metric metric_from_string(std::string_view text);
const std::vector<Metric>& all_metrics();

// NaN marks an undefined value.
struct PerformanceReport {
  double precision = 0, recall = 0, f1 = 0, kappa = 0, mcc = 0, auc = 0;

  double get(Metric metric) const;
};

// Everything but AUC (left NaN). Throws InputError on an empty matrix.
PerformanceReport score(const ConfusionMatrix& cm);

// low / fair / moderate / strong / very strong.
std::string_view mcc_magnitude(double mcc);

// Mann-Whitney AUC with midranks; NaN unless both labels occur.
double auc(const std::vector<double>& scores, const std::vector<bool>& truth);

// |snoring - no_snoring| / no_snoring; NaN when undefined.
double relative_loss(double pp_snoring, double pp_no_snoring);

struct Effect {
  double delta = 0;
  std::string magnitude;
};

struct TestResult {
  double statistic = 0;
  double p_value = 1;
  std::optional<Effect> effect;
  // Observations actually used (after dropping zeros or NaN pairs).
  std::size_t n = 0;
};

using Pairs = std::vector<std::pair<double, double>>;

// Two-sided signed-rank test on x - y; the statistic is the positive rank
// sum. Exact for n <= 20 nonzero differences, normal approximation with
// tie and continuity correction beyond. Throws DegenerateDataError when
// every difference is zero.
TestResult wilcoxon_signed_rank(const Pairs& pairs);

inline constexpr std::size_t kWilcoxonExactLimit = 20;

// (#{x > y} - #{x < y}) / n with the usual magnitude thresholds.
Effect cliffs_delta_paired(const Pairs& pairs);

// Holm step-down adjustment, returned in input order.
std::vector<double> holm_adjust(const std::vector<double>& p_values);

// Average ranks, 1-based, ties sharing their mean rank.
std::vector<double> midranks(const std::vector<double>& values);

// Rank correlation with a two-sided Student t p-value. rho is NaN for a
// constant input. Throws InputError for n < 3.
TestResult spearman(const std::vector<double>& xs, const std::vector<double>& ys);

struct Measurement {
  std::string project;
  std::string classifier;
  int drop_count = 0;
  double value = 0;
};

struct FactorResult {
  std::string factor;  // "drop_count" or "classifier"
  double statistic = 0;
  double p_value = 1;
  int iterations = 0;
};

// Repeated-measures permutation test with the project as blocking factor.
// Values are centered per project; the statistic is the between-level sum
// of squares of the tested factor, whose labels are permuted within each
// project. p = #{permuted >= observed} / iterations. NaN values are
// dropped. Throws InputError with fewer than 2 projects or 2 levels.
std::vector<FactorResult> permutation_test_repeated(
    const std::vector<Measurement>& measurements, int iterations, std::uint64_t seed,
    const std::vector<std::string>& factors = {"drop_count", "classifier"});

}  // namespace snoring

#endif  // SNORING_STATS_H_
