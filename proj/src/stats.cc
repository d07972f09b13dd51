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
#include "snoring/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "snoring/random.h"

namespace snoring {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ratio(double num, double den) { return den == 0 ? kNaN : num / den; }

}  // namespace

ConfusionMatrix confusion(const std::vector<bool>& predicted,
                          const std::vector<bool>& truth) {
  if (predicted.size() != truth.size()) {
    throw InputError("predictions and truth differ in length");
  }
  if (predicted.empty()) throw InputError("no predictions");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i]) {
      (predicted[i] ? cm.tp : cm.fn) += 1;
    } else {
      (predicted[i] ? cm.fp : cm.tn) += 1;
    }
  }
  return cm;
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kPrecision:
      return "precision";
    case Metric::kRecall:
      return "recall";
    case Metric::kF1:
      return "f1";
    case Metric::kKappa:
      return "kappa";
    case Metric::kMcc:
      return "mcc";
    case Metric::kAuc:
      return "auc";
  }
  return "?";
}

Metric metric_from_string(std::string_view text) {
  for (const auto m : all_metrics()) {
    if (to_string(m) == text) return m;
  }
  throw InputError("unknown metric '" + std::string(text) + "'");
}

const std::vector<Metric>& all_metrics() {
  static const std::vector<Metric> metrics = {Metric::kPrecision, Metric::kRecall,
                                              Metric::kF1,        Metric::kKappa,
                                              Metric::kMcc,       Metric::kAuc};
  return metrics;
}

double PerformanceReport::get(Metric metric) const {
  switch (metric) {
    case Metric::kPrecision:
      return precision;
    case Metric::kRecall:
      return recall;
    case Metric::kF1:
      return f1;
    case Metric::kKappa:
      return kappa;
    case Metric::kMcc:
      return mcc;
    case Metric::kAuc:
      return auc;
  }
  return kNaN;
}

PerformanceReport score(const ConfusionMatrix& cm) {
  if (cm.total() <= 0) throw InputError("empty confusion matrix");
  const double tp = cm.tp, fp = cm.fp, tn = cm.tn, fn = cm.fn;
  const double n = tp + fp + tn + fn;
  PerformanceReport r;
  r.precision = ratio(tp, tp + fp);
  r.recall = ratio(tp, tp + fn);
  r.f1 = ratio(2 * tp, 2 * tp + fp + fn);
  if (std::isnan(r.precision) || std::isnan(r.recall)) r.f1 = kNaN;
  const double po = (tp + tn) / n;
  const double pe = ((tp + fp) * (tp + fn) + (fn + tn) * (fp + tn)) / (n * n);
  r.kappa = ratio(po - pe, 1 - pe);
  const double den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  r.mcc = den == 0 ? kNaN : (tp * tn - fp * fn) / std::sqrt(den);
  r.auc = kNaN;
  return r;
}

std::string_view mcc_magnitude(double mcc) {
  if (std::isnan(mcc)) return "undefined";
  if (mcc < 0.2) return "low";
  if (mcc < 0.4) return "fair";
  if (mcc < 0.6) return "moderate";
  if (mcc < 0.8) return "strong";
  return "very strong";
}

std::vector<double> midranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + j) + 2) / 2;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double auc(const std::vector<double>& scores, const std::vector<bool>& truth) {
  if (scores.size() != truth.size()) throw InputError("scores and truth differ in length");
  const auto ranks = midranks(scores);
  double pos = 0, rank_sum = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i]) {
      ++pos;
      rank_sum += ranks[i];
    }
  }
  const double neg = static_cast<double>(truth.size()) - pos;
  if (pos == 0 || neg == 0) return kNaN;
  const double u = rank_sum - pos * (pos + 1) / 2;
  return u / (pos * neg);
}

double relative_loss(double pp_snoring, double pp_no_snoring) {
  if (std::isnan(pp_snoring) || std::isnan(pp_no_snoring) || pp_no_snoring == 0) {
    return kNaN;
  }
  return std::fabs(pp_snoring - pp_no_snoring) / pp_no_snoring;
}

TestResult wilcoxon_signed_rank(const Pairs& pairs) {
  std::vector<double> diffs;
  for (const auto& [x, y] : pairs) {
    if (std::isnan(x) || std::isnan(y)) continue;
    if (x != y) diffs.push_back(x - y);
  }
  if (diffs.empty()) throw DegenerateDataError("degenerate sample: all differences are zero");
  const std::size_t n = diffs.size();
  std::vector<double> magnitudes(n);
  for (std::size_t i = 0; i < n; ++i) magnitudes[i] = std::fabs(diffs[i]);
  const auto ranks = midranks(magnitudes);
  double w_plus = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (diffs[i] > 0) w_plus += ranks[i];
  }
  const double mean = static_cast<double>(n * (n + 1)) / 4;

  TestResult result;
  result.statistic = w_plus;
  result.n = n;
  if (n <= kWilcoxonExactLimit) {
    // Midranks are multiples of 1/2, so doubled ranks are integers and the
    // null distribution of the doubled sum is a subset-sum count.
    std::vector<int> doubled(n);
    int total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      doubled[i] = static_cast<int>(std::lround(2 * ranks[i]));
      total += doubled[i];
    }
    std::vector<double> ways(static_cast<std::size_t>(total) + 1, 0.0);
    ways[0] = 1;
    int reach = 0;
    for (const int r : doubled) {
      for (int s = reach; s >= 0; --s) {
        if (ways[static_cast<std::size_t>(s)] != 0) {
          ways[static_cast<std::size_t>(s + r)] += ways[static_cast<std::size_t>(s)];
        }
      }
      reach += r;
    }
    const double observed = std::fabs(2 * w_plus - 2 * mean);
    double extreme = 0;
    for (int s = 0; s <= total; ++s) {
      if (std::fabs(s - 2 * mean) >= observed - 1e-9) extreme += ways[static_cast<std::size_t>(s)];
    }
    result.p_value = std::min(1.0, extreme / std::ldexp(1.0, static_cast<int>(n)));
  } else {
    std::map<double, int> ties;
    for (const double r : ranks) ++ties[r];
    double correction = 0;
    for (const auto& [rank, t] : ties) correction += (std::pow(t, 3) - t) / 48.0;
    const double nn = static_cast<double>(n);
    const double var = nn * (nn + 1) * (2 * nn + 1) / 24.0 - correction;
    const double dev = std::max(0.0, std::fabs(w_plus - mean) - 0.5);
    const double z = var > 0 ? dev / std::sqrt(var) : 0.0;
    result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  }
  return result;
}

Effect cliffs_delta_paired(const Pairs& pairs) {
  if (pairs.empty()) throw InputError("no pairs");
  double greater = 0, less = 0, n = 0;
  for (const auto& [x, y] : pairs) {
    if (std::isnan(x) || std::isnan(y)) continue;
    ++n;
    greater += x > y;
    less += x < y;
  }
  if (n == 0) throw DegenerateDataError("no defined pairs");
  Effect e;
  e.delta = (greater - less) / n;
  const double d = std::fabs(e.delta);
  e.magnitude = d < 0.147 ? "negligible" : d < 0.33 ? "small" : d < 0.474 ? "medium" : "large";
  return e;
}

std::vector<double> holm_adjust(const std::vector<double>& p_values) {
  const std::size_t n = p_values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p_values[a] < p_values[b];
  });
  std::vector<double> out(n);
  double running = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double adjusted = std::min(1.0, p_values[order[i]] * static_cast<double>(n - i));
    running = std::max(running, adjusted);
    out[order[i]] = running;
  }
  return out;
}

TestResult spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw InputError("spearman inputs differ in length");
  const std::size_t n = xs.size();
  if (n < 3) throw InputError("spearman needs at least 3 observations");
  const auto rx = midranks(xs), ry = midranks(ys);
  const double mean = (static_cast<double>(n) + 1) / 2;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  TestResult result;
  result.n = n;
  if (sxx == 0 || syy == 0) {
    result.statistic = kNaN;
    result.p_value = kNaN;
    return result;
  }
  const double rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  result.statistic = rho;
  const double df = static_cast<double>(n) - 2;
  if (std::fabs(rho) >= 1.0) {
    result.p_value = 0.0;
  } else {
    const double t = rho * std::sqrt(df / (1 - rho * rho));
    const boost::math::students_t dist(df);
    result.p_value = std::min(1.0, 2 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))));
  }
  return result;
}

namespace {

double between_ss(const std::vector<double>& centered, const std::vector<int>& level,
                  int levels) {
  std::vector<double> sum(static_cast<std::size_t>(levels), 0.0);
  std::vector<double> count(static_cast<std::size_t>(levels), 0.0);
  double grand = 0;
  for (std::size_t i = 0; i < centered.size(); ++i) {
    sum[static_cast<std::size_t>(level[i])] += centered[i];
    count[static_cast<std::size_t>(level[i])] += 1;
    grand += centered[i];
  }
  grand /= static_cast<double>(centered.size());
  double ss = 0;
  for (std::size_t l = 0; l < sum.size(); ++l) {
    if (count[l] == 0) continue;
    const double d = sum[l] / count[l] - grand;
    ss += count[l] * d * d;
  }
  return ss;
}

}  // namespace

std::vector<FactorResult> permutation_test_repeated(
    const std::vector<Measurement>& measurements, int iterations, std::uint64_t seed,
    const std::vector<std::string>& factors) {
  if (iterations < 1) throw InputError("iterations must be positive");
  std::vector<const Measurement*> rows;
  for (const auto& m : measurements) {
    if (!std::isnan(m.value)) rows.push_back(&m);
  }
  std::map<std::string, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < rows.size(); ++i) blocks[rows[i]->project].push_back(i);
  if (blocks.size() < 2) {
    throw InputError("permutation test needs at least 2 projects, got " +
                     std::to_string(blocks.size()));
  }
  std::vector<double> centered(rows.size());
  for (const auto& [project, members] : blocks) {
    double mean = 0;
    for (const auto i : members) mean += rows[i]->value;
    mean /= static_cast<double>(members.size());
    for (const auto i : members) centered[i] = rows[i]->value - mean;
  }

  std::vector<FactorResult> out;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const auto& factor = factors[f];
    std::map<std::string, int> level_ids;
    std::vector<std::string> keys(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (factor == "drop_count") {
        keys[i] = std::to_string(rows[i]->drop_count);
      } else if (factor == "classifier") {
        keys[i] = rows[i]->classifier;
      } else {
        throw InputError("unknown factor '" + factor + "'");
      }
      level_ids.emplace(keys[i], 0);
    }
    if (level_ids.size() < 2) {
      throw InputError("factor " + factor + " needs at least 2 levels");
    }
    int next = 0;
    for (auto& [key, id] : level_ids) id = next++;
    std::vector<int> level(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) level[i] = level_ids.at(keys[i]);

    FactorResult r;
    r.factor = factor;
    r.iterations = iterations;
    r.statistic = between_ss(centered, level, next);
    const double threshold = r.statistic * (1 - 1e-12) - 1e-15;
    int extreme = 0;
    std::vector<int> permuted = level;
    std::vector<int> block_levels;
    const std::uint64_t factor_seed = derive_seed(seed, f);
    for (int it = 0; it < iterations; ++it) {
      Rng rng(derive_seed(factor_seed, static_cast<std::uint64_t>(it)));
      for (const auto& [project, members] : blocks) {
        block_levels.clear();
        for (const auto i : members) block_levels.push_back(level[i]);
        shuffle(block_levels, rng);
        for (std::size_t k = 0; k < members.size(); ++k) permuted[members[k]] = block_levels[k];
      }
      if (between_ss(centered, permuted, next) >= threshold) ++extreme;
    }
    r.p_value = static_cast<double>(extreme) / iterations;
    out.push_back(r);
  }
  return out;
}

}  // namespace snoring
