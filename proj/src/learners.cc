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
#include "snoring/learners.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "snoring/random.h"

namespace snoring {

using json = nlohmann::json;
using Matrix = std::vector<std::vector<double>>;

Table to_table(const Dataset& d) {
  Table t;
  for (const auto name : feature_names()) t.names.emplace_back(name);
  t.x.reserve(d.rows.size());
  t.y.reserve(d.rows.size());
  for (const auto& row : d.rows) {
    t.x.emplace_back(row.features.begin(), row.features.end());
    t.y.push_back(row.defective ? 1 : 0);
  }
  return t;
}

double abs_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  if (n == 0 || b.size() != n) return 0.0;
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0 || sbb <= 0) return 0.0;
  return std::min(1.0, std::fabs(sab) / std::sqrt(saa * sbb));
}

double cfs_merit(const std::vector<std::size_t>& subset,
                 const std::vector<double>& feature_class,
                 const std::vector<std::vector<double>>& feature_feature) {
  const double k = static_cast<double>(subset.size());
  if (subset.empty()) return 0.0;
  double rcf = 0;
  for (const auto i : subset) rcf += feature_class[i];
  rcf /= k;
  double rff = 0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      rff += feature_feature[subset[a]][subset[b]];
    }
  }
  if (subset.size() > 1) rff /= k * (k - 1) / 2;
  const double denom = std::sqrt(k + k * (k - 1) * rff);
  return denom > 0 ? k * rcf / denom : 0.0;
}

CfsResult cfs_select(const Table& training, Warnings* warnings) {
  const std::size_t m = training.columns();
  CfsResult result;
  const auto positives = std::count(training.y.begin(), training.y.end(), 1);
  if (training.rows() < 2 || positives == 0 ||
      positives == static_cast<long>(training.rows())) {
    if (warnings) warnings->push_back("feature selection undefined on single-label data");
    result.selected.resize(m);
    std::iota(result.selected.begin(), result.selected.end(), 0);
    return result;
  }
  std::vector<std::vector<double>> columns(m);
  for (std::size_t j = 0; j < m; ++j) {
    columns[j].reserve(training.rows());
    for (const auto& row : training.x) columns[j].push_back(row[j]);
  }
  const std::vector<double> label(training.y.begin(), training.y.end());
  std::vector<double> rcf(m);
  std::vector<std::vector<double>> rff(m, std::vector<double>(m, 1.0));
  for (std::size_t j = 0; j < m; ++j) {
    rcf[j] = abs_correlation(columns[j], label);
    for (std::size_t k = 0; k < j; ++k) {
      rff[j][k] = rff[k][j] = abs_correlation(columns[j], columns[k]);
    }
  }

  std::vector<bool> in(m, false);
  std::vector<std::size_t> current;
  double merit = -1;
  bool first = true;
  while (true) {
    std::optional<std::vector<std::size_t>> best;
    double best_merit = merit;
    auto consider = [&](std::vector<std::size_t> candidate) {
      const double v = cfs_merit(candidate, rcf, rff);
      if (!best || v > best_merit + 1e-12) {
        best_merit = v;
        best = std::move(candidate);
      }
    };
    for (std::size_t j = 0; j < m; ++j) {
      if (in[j]) continue;
      auto c = current;
      c.insert(std::upper_bound(c.begin(), c.end(), j), j);
      consider(std::move(c));
    }
    if (current.size() > 1) {
      for (std::size_t pos = 0; pos < current.size(); ++pos) {
        auto c = current;
        c.erase(c.begin() + static_cast<long>(pos));
        consider(std::move(c));
      }
    }
    if (!best) break;
    if (first) {
      result.best_single_merit = best_merit;
      first = false;
    } else if (!(best_merit > merit + 1e-12)) {
      break;
    }
    current = *best;
    merit = best_merit;
    std::fill(in.begin(), in.end(), false);
    for (const auto j : current) in[j] = true;
  }
  result.selected = current;
  result.merit = std::max(merit, 0.0);
  return result;
}

std::string_view to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kNaiveBayes:
      return "naive_bayes";
    case LearnerKind::kDecisionStump:
      return "decision_stump";
    case LearnerKind::kOneR:
      return "oner";
    case LearnerKind::kIbk1:
      return "ibk1";
    case LearnerKind::kRandomForest:
      return "random_forest";
    case LearnerKind::kPrunedTree:
      return "pruned_tree";
  }
  return "?";
}

LearnerKind learner_kind_from_string(std::string_view text) {
  for (const auto kind : all_learner_kinds()) {
    if (to_string(kind) == text) return kind;
  }
  throw InputError("unknown classifier '" + std::string(text) + "'");
}

const std::vector<LearnerKind>& all_learner_kinds() {
  static const std::vector<LearnerKind> kinds = {
      LearnerKind::kNaiveBayes, LearnerKind::kDecisionStump, LearnerKind::kOneR,
      LearnerKind::kIbk1,       LearnerKind::kRandomForest,  LearnerKind::kPrunedTree};
  return kinds;
}

namespace {

double entropy(double pos, double total) {
  if (total <= 0 || pos <= 0 || pos >= total) return 0.0;
  const double p = pos / total, q = 1 - p;
  return -(p * std::log2(p) + q * std::log2(q));
}

// ---- naive Bayes -------------------------------------------------------

class NaiveBayes : public Classifier {
 public:
  static constexpr double kVarianceFloor = 1e-9;

  NaiveBayes(const Matrix& x, const std::vector<int>& y) {
    const std::size_t m = x.empty() ? 0 : x[0].size();
    double count[2] = {0, 0};
    for (const int label : y) ++count[label];
    prior_ = count[1] / static_cast<double>(y.size());
    single_label_ = count[0] == 0 || count[1] == 0;
    for (int c = 0; c < 2; ++c) {
      mean_[c].assign(m, 0.0);
      var_[c].assign(m, kVarianceFloor);
    }
    if (single_label_) return;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < m; ++j) mean_[y[i]][j] += x[i][j];
    }
    for (int c = 0; c < 2; ++c) {
      for (auto& v : mean_[c]) v /= count[c];
    }
    std::vector<double> ss[2] = {std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double d = x[i][j] - mean_[y[i]][j];
        ss[y[i]][j] += d * d;
      }
    }
    for (int c = 0; c < 2; ++c) {
      for (std::size_t j = 0; j < m; ++j) {
        var_[c][j] = std::max(ss[c][j] / count[c], kVarianceFloor);
      }
    }
  }

  explicit NaiveBayes(const json& p)
      : prior_(p.at("prior").get<double>()),
        single_label_(p.at("single_label").get<bool>()) {
    for (int c = 0; c < 2; ++c) {
      mean_[c] = p.at("mean").at(c).get<std::vector<double>>();
      var_[c] = p.at("variance").at(c).get<std::vector<double>>();
    }
  }

  double score(const std::vector<double>& row) const override {
    if (single_label_) return prior_;
    double log_p[2] = {std::log(1 - prior_), std::log(prior_)};
    for (int c = 0; c < 2; ++c) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        const double d = row[j] - mean_[c][j];
        log_p[c] += -0.5 * std::log(2 * M_PI * var_[c][j]) - d * d / (2 * var_[c][j]);
      }
    }
    const double hi = std::max(log_p[0], log_p[1]);
    const double e0 = std::exp(log_p[0] - hi), e1 = std::exp(log_p[1] - hi);
    return e1 / (e0 + e1);
  }

  json parameters() const override {
    return {{"prior", prior_},
            {"single_label", single_label_},
            {"mean", {mean_[0], mean_[1]}},
            {"variance", {var_[0], var_[1]}}};
  }

 private:
  double prior_ = 0;
  bool single_label_ = false;
  std::vector<double> mean_[2];
  std::vector<double> var_[2];
};

// Midpoint of lo < hi that still separates them when the two are adjacent
// doubles.
double split_point(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2;
  return mid < hi ? mid : lo;
}

// ---- trees -------------------------------------------------------------

struct TreeNode {
  int feature = -1;  // -1 for a leaf
  double threshold = 0;
  int left = -1, right = -1;
  double pos = 0, total = 0;

  double score() const { return total > 0 ? pos / total : 0.0; }
};

struct Split {
  std::size_t feature = 0;
  double threshold = 0;
  double gain = 0;
};

std::optional<Split> best_split(const Matrix& x, const std::vector<int>& y,
                                const std::vector<std::size_t>& rows,
                                const std::vector<std::size_t>& features) {
  const double n = static_cast<double>(rows.size());
  double pos = 0;
  for (const auto i : rows) pos += y[i];
  const double parent = entropy(pos, n);
  if (parent <= 0) return std::nullopt;
  std::optional<Split> best;
  std::vector<std::size_t> order;
  for (const auto f : features) {
    order = rows;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a][f] < x[b][f]; });
    double left_pos = 0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      left_pos += y[order[k]];
      const double lo = x[order[k]][f], hi = x[order[k + 1]][f];
      if (!(lo < hi)) continue;
      const double nl = static_cast<double>(k + 1), nr = n - nl;
      const double cond =
          (nl / n) * entropy(left_pos, nl) + (nr / n) * entropy(pos - left_pos, nr);
      const double gain = parent - cond;
      if (gain > 1e-12 && (!best || gain > best->gain + 1e-12)) {
        best = Split{f, split_point(lo, hi), gain};
      }
    }
  }
  return best;
}

class Tree {
 public:
  struct Options {
    int max_depth = -1;
    std::size_t features_per_split = 0;  // 0: all
    Rng* rng = nullptr;
  };

  Tree() = default;

  Tree(const Matrix& x, const std::vector<int>& y, std::vector<std::size_t> rows,
       const Options& options) {
    grow(x, y, std::move(rows), 0, options);
  }

  explicit Tree(const json& p) {
    for (const auto& n : p) {
      nodes_.push_back({n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(),
                        n.at(3).get<int>(), n.at(4).get<double>(), n.at(5).get<double>()});
    }
  }

  double score(const std::vector<double>& row) const { return leaf(row).score(); }

  const TreeNode& leaf(const std::vector<double>& row) const {
    int at = 0;
    while (nodes_[at].feature >= 0) {
      const auto& n = nodes_[at];
      at = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes_[at];
  }

  json parameters() const {
    json out = json::array();
    for (const auto& n : nodes_) {
      out.push_back({n.feature, n.threshold, n.left, n.right, n.pos, n.total});
    }
    return out;
  }

  // Reduced-error pruning: a subtree becomes a leaf when that does not
  // increase its errors on the pruning rows.
  void prune(const Matrix& x, const std::vector<int>& y,
             const std::vector<std::size_t>& rows) {
    prune_node(0, x, y, rows);
  }

  std::size_t size() const { return nodes_.size(); }

 private:
  int grow(const Matrix& x, const std::vector<int>& y, std::vector<std::size_t> rows,
           int depth, const Options& options) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    for (const auto i : rows) nodes_[id].pos += y[i];
    nodes_[id].total = static_cast<double>(rows.size());
    if (rows.size() < 2 || (options.max_depth >= 0 && depth >= options.max_depth)) {
      return id;
    }
    const std::size_t m = x[rows[0]].size();
    std::vector<std::size_t> features(m);
    std::iota(features.begin(), features.end(), 0);
    if (options.features_per_split > 0 && options.features_per_split < m) {
      for (std::size_t k = 0; k < options.features_per_split; ++k) {
        std::swap(features[k], features[k + uniform_index(*options.rng, m - k)]);
      }
      features.resize(options.features_per_split);
      std::sort(features.begin(), features.end());
    }
    const auto split = best_split(x, y, rows, features);
    if (!split) return id;
    std::vector<std::size_t> left, right;
    for (const auto i : rows) {
      (x[i][split->feature] <= split->threshold ? left : right).push_back(i);
    }
    if (left.empty() || right.empty()) return id;
    rows.clear();
    rows.shrink_to_fit();
    const int l = grow(x, y, std::move(left), depth + 1, options);
    const int r = grow(x, y, std::move(right), depth + 1, options);
    nodes_[id].feature = static_cast<int>(split->feature);
    nodes_[id].threshold = split->threshold;
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  // Returns the subtree's errors on `rows` after pruning.
  double prune_node(int id, const Matrix& x, const std::vector<int>& y,
                    const std::vector<std::size_t>& rows) {
    auto& node = nodes_[id];
    const int majority = node.score() >= kDecisionThreshold ? 1 : 0;
    double as_leaf = 0;
    for (const auto i : rows) as_leaf += y[i] != majority;
    if (node.feature < 0) return as_leaf;
    std::vector<std::size_t> left, right;
    for (const auto i : rows) {
      (x[i][static_cast<std::size_t>(node.feature)] <= node.threshold ? left : right)
          .push_back(i);
    }
    const int l = node.left, r = node.right;
    const double subtree = prune_node(l, x, y, left) + prune_node(r, x, y, right);
    if (as_leaf <= subtree) {
      nodes_[id].feature = -1;
      nodes_[id].left = nodes_[id].right = -1;
      return as_leaf;
    }
    return subtree;
  }

  std::vector<TreeNode> nodes_;
};

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

class DecisionStump : public Classifier {
 public:
  DecisionStump(const Matrix& x, const std::vector<int>& y)
      : tree_(x, y, all_rows(x.size()), {1, 0, nullptr}) {}
  explicit DecisionStump(const json& p) : tree_(p.at("nodes")) {}

  double score(const std::vector<double>& row) const override { return tree_.score(row); }
  json parameters() const override { return {{"nodes", tree_.parameters()}}; }

 private:
  Tree tree_;
};

class PrunedTree : public Classifier {
 public:
  static constexpr std::size_t kHoldoutDivisor = 4;

  PrunedTree(const Matrix& x, const std::vector<int>& y) {
    const std::size_t n = x.size();
    const std::size_t holdout = n / kHoldoutDivisor;
    const std::size_t grow_n = n - holdout;
    tree_ = Tree(x, y, all_rows(grow_n), {});
    std::vector<std::size_t> tail(holdout);
    std::iota(tail.begin(), tail.end(), grow_n);
    if (!tail.empty()) tree_.prune(x, y, tail);
  }
  explicit PrunedTree(const json& p) : tree_(p.at("nodes")) {}

  double score(const std::vector<double>& row) const override { return tree_.score(row); }
  json parameters() const override { return {{"nodes", tree_.parameters()}}; }

 private:
  Tree tree_;
};

class RandomForest : public Classifier {
 public:
  static constexpr int kTrees = 100;

  RandomForest(const Matrix& x, const std::vector<int>& y, std::uint64_t seed) {
    const std::size_t n = x.size();
    const std::size_t m = x[0].size();
    const auto per_split =
        static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m))));
    trees_.reserve(kTrees);
    for (int t = 0; t < kTrees; ++t) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
      std::vector<std::size_t> sample(n);
      for (auto& i : sample) i = uniform_index(rng, n);
      std::sort(sample.begin(), sample.end());
      trees_.emplace_back(x, y, std::move(sample), Tree::Options{-1, per_split, &rng});
    }
  }
  explicit RandomForest(const json& p) {
    for (const auto& t : p.at("trees")) trees_.emplace_back(t);
  }

  double score(const std::vector<double>& row) const override {
    double sum = 0;
    for (const auto& t : trees_) sum += t.score(row);
    return sum / static_cast<double>(trees_.size());
  }
  json parameters() const override {
    json trees = json::array();
    for (const auto& t : trees_) trees.push_back(t.parameters());
    return {{"trees", std::move(trees)}};
  }

 private:
  std::vector<Tree> trees_;
};

// ---- OneR --------------------------------------------------------------

class OneR : public Classifier {
 public:
  static constexpr double kMinBucket = 3;

  struct Bucket {
    double upper = std::numeric_limits<double>::infinity();
    double pos = 0, neg = 0;

    int majority() const { return pos > neg ? 1 : 0; }
    double errors() const { return std::min(pos, neg); }
  };

  OneR(const Matrix& x, const std::vector<int>& y) {
    const std::size_t m = x[0].size();
    double best_errors = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < m; ++f) {
      auto buckets = discretize(x, y, f);
      double errors = 0;
      for (const auto& b : buckets) errors += b.errors();
      if (errors < best_errors - 1e-12) {
        best_errors = errors;
        feature_ = f;
        buckets_ = std::move(buckets);
      }
    }
  }

  explicit OneR(const json& p) : feature_(p.at("feature").get<std::size_t>()) {
    for (const auto& b : p.at("buckets")) {
      const double upper =
          b.at(0).is_null() ? std::numeric_limits<double>::infinity() : b.at(0).get<double>();
      buckets_.push_back({upper, b.at(1).get<double>(), b.at(2).get<double>()});
    }
  }

  double score(const std::vector<double>& row) const override {
    const double v = row[feature_];
    for (const auto& b : buckets_) {
      if (v <= b.upper) return b.pos / (b.pos + b.neg);
    }
    const auto& last = buckets_.back();
    return last.pos / (last.pos + last.neg);
  }

  json parameters() const override {
    json buckets = json::array();
    for (const auto& b : buckets_) {
      buckets.push_back({std::isinf(b.upper) ? json(nullptr) : json(b.upper), b.pos, b.neg});
    }
    return {{"feature", feature_}, {"buckets", std::move(buckets)}};
  }

  // Sorted values are cut into buckets holding at least kMinBucket rows of
  // their majority class; a bucket keeps growing while the next value group
  // has the same majority. Adjacent buckets with equal majority merge.
  static std::vector<Bucket> discretize(const Matrix& x, const std::vector<int>& y,
                                        std::size_t f) {
    auto order = all_rows(x.size());
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a][f] < x[b][f]; });
    std::vector<Bucket> groups;
    std::vector<double> values;
    for (const auto i : order) {
      if (values.empty() || x[i][f] != values.back()) {
        groups.emplace_back();
        values.push_back(x[i][f]);
      }
      (y[i] ? groups.back().pos : groups.back().neg) += 1;
    }
    std::vector<Bucket> buckets;
    Bucket cur;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      cur.pos += groups[g].pos;
      cur.neg += groups[g].neg;
      if (std::max(cur.pos, cur.neg) < kMinBucket || g + 1 == groups.size()) continue;
      if (groups[g + 1].majority() == cur.majority()) continue;
      cur.upper = split_point(values[g], values[g + 1]);
      buckets.push_back(cur);
      cur = Bucket{};
    }
    if (cur.pos + cur.neg > 0) {
      if (!buckets.empty() && std::max(cur.pos, cur.neg) < kMinBucket) {
        buckets.back().pos += cur.pos;
        buckets.back().neg += cur.neg;
        buckets.back().upper = std::numeric_limits<double>::infinity();
      } else {
        cur.upper = std::numeric_limits<double>::infinity();
        buckets.push_back(cur);
      }
    }
    std::vector<Bucket> merged;
    for (const auto& b : buckets) {
      if (!merged.empty() && merged.back().majority() == b.majority()) {
        merged.back().pos += b.pos;
        merged.back().neg += b.neg;
        merged.back().upper = b.upper;
      } else {
        merged.push_back(b);
      }
    }
    return merged;
  }

 private:
  std::size_t feature_ = 0;
  std::vector<Bucket> buckets_;
};

// ---- 1-nearest neighbour -------------------------------------------------

class Ibk1 : public Classifier {
 public:
  Ibk1(const Matrix& x, const std::vector<int>& y) : x_(x), y_(y) {
    const std::size_t m = x[0].size();
    lo_.assign(m, std::numeric_limits<double>::infinity());
    hi_.assign(m, -std::numeric_limits<double>::infinity());
    for (const auto& row : x) {
      for (std::size_t j = 0; j < m; ++j) {
        lo_[j] = std::min(lo_[j], row[j]);
        hi_[j] = std::max(hi_[j], row[j]);
      }
    }
    for (auto& row : x_) normalize(row);
  }

  explicit Ibk1(const json& p)
      : x_(p.at("rows").get<Matrix>()),
        y_(p.at("labels").get<std::vector<int>>()),
        lo_(p.at("min").get<std::vector<double>>()),
        hi_(p.at("max").get<std::vector<double>>()) {}

  double score(const std::vector<double>& row) const override {
    auto q = row;
    normalize(q);
    double best = std::numeric_limits<double>::infinity();
    int label = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      double d = 0;
      for (std::size_t j = 0; j < q.size(); ++j) {
        const double diff = q[j] - x_[i][j];
        d += diff * diff;
      }
      if (d < best) {
        best = d;
        label = y_[i];
      }
    }
    return label;
  }

  json parameters() const override {
    return {{"min", lo_}, {"max", hi_}, {"rows", x_}, {"labels", y_}};
  }

 private:
  void normalize(std::vector<double>& row) const {
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double range = hi_[j] - lo_[j];
      row[j] = range > 0 ? (row[j] - lo_[j]) / range : 0.0;
    }
  }

  Matrix x_;
  std::vector<int> y_;
  std::vector<double> lo_, hi_;
};

class PriorOnly : public Classifier {
 public:
  explicit PriorOnly(double prior) : prior_(prior) {}
  double score(const std::vector<double>&) const override { return prior_; }
  json parameters() const override { return {{"prior", prior_}}; }

 private:
  double prior_;
};

std::shared_ptr<const Classifier> fit(LearnerKind kind, const Matrix& x,
                                      const std::vector<int>& y, std::uint64_t seed) {
  switch (kind) {
    case LearnerKind::kNaiveBayes:
      return std::make_shared<NaiveBayes>(x, y);
    case LearnerKind::kDecisionStump:
      return std::make_shared<DecisionStump>(x, y);
    case LearnerKind::kOneR:
      return std::make_shared<OneR>(x, y);
    case LearnerKind::kIbk1:
      return std::make_shared<Ibk1>(x, y);
    case LearnerKind::kRandomForest:
      return std::make_shared<RandomForest>(x, y, seed);
    case LearnerKind::kPrunedTree:
      return std::make_shared<PrunedTree>(x, y);
  }
  throw InputError("unknown classifier");
}

std::shared_ptr<const Classifier> load(LearnerKind kind, const json& p) {
  if (p.contains("prior_only")) {
    return std::make_shared<PriorOnly>(p.at("prior_only").get<double>());
  }
  switch (kind) {
    case LearnerKind::kNaiveBayes:
      return std::make_shared<NaiveBayes>(p);
    case LearnerKind::kDecisionStump:
      return std::make_shared<DecisionStump>(p);
    case LearnerKind::kOneR:
      return std::make_shared<OneR>(p);
    case LearnerKind::kIbk1:
      return std::make_shared<Ibk1>(p);
    case LearnerKind::kRandomForest:
      return std::make_shared<RandomForest>(p);
    case LearnerKind::kPrunedTree:
      return std::make_shared<PrunedTree>(p);
  }
  throw InputError("unknown classifier");
}

}  // namespace

TrainedModel train(LearnerKind kind, const Table& training, std::uint64_t seed,
                   const std::vector<std::size_t>& selected) {
  if (training.rows() == 0) throw InputError("empty training set");
  if (training.y.size() != training.rows()) throw InputError("label count mismatch");
  if (selected.empty()) throw InputError("no features selected");
  TrainedModel model;
  model.kind_ = kind;
  model.selected_ = selected;
  for (const auto j : selected) {
    if (j >= training.columns()) throw InputError("selected feature out of range");
    model.selected_names_.push_back(training.names[j]);
  }
  model.seed_ = seed;
  model.rows_ = training.rows();

  Matrix x;
  x.reserve(training.rows());
  for (const auto& row : training.x) {
    std::vector<double> projected;
    projected.reserve(selected.size());
    for (const auto j : selected) projected.push_back(row.at(j));
    x.push_back(std::move(projected));
  }
  const auto positives = std::count(training.y.begin(), training.y.end(), 1);
  if (positives == 0 || positives == static_cast<long>(training.rows())) {
    model.impl_ = std::make_shared<PriorOnly>(positives ? 1.0 : 0.0);
  } else {
    model.impl_ = fit(kind, x, training.y, seed);
  }
  return model;
}

TrainedModel train(LearnerKind kind, const Table& training, std::uint64_t seed) {
  return train(kind, training, seed, all_rows(training.columns()));
}

Prediction TrainedModel::predict(const std::vector<double>& row) const {
  std::vector<double> projected;
  projected.reserve(selected_.size());
  for (std::size_t i = 0; i < selected_.size(); ++i) {
    if (selected_[i] >= row.size()) {
      throw InputError("row lacks feature " + selected_names_[i]);
    }
    projected.push_back(row[selected_[i]]);
  }
  const double s = std::clamp(impl_->score(projected), 0.0, 1.0);
  return {s, s >= kDecisionThreshold};
}

json TrainedModel::to_json() const {
  json params = impl_->parameters();
  if (dynamic_cast<const PriorOnly*>(impl_.get())) {
    params = {{"prior_only", params.at("prior")}};
  }
  return {{"format", "snoring-model"},
          {"version", kModelFormatVersion},
          {"kind", to_string(kind_)},
          {"selected_features", selected_names_},
          {"selected_columns", selected_},
          {"seed", seed_},
          {"training_rows", rows_},
          {"parameters", std::move(params)}};
}

TrainedModel TrainedModel::from_json(const json& doc) {
  try {
    if (doc.at("format") != "snoring-model") throw InputError("not a model document");
    if (doc.at("version").get<int>() != kModelFormatVersion) {
      throw InputError("unsupported model version " + doc.at("version").dump());
    }
    TrainedModel m;
    m.kind_ = learner_kind_from_string(doc.at("kind").get<std::string>());
    m.selected_names_ = doc.at("selected_features").get<std::vector<std::string>>();
    m.selected_ = doc.at("selected_columns").get<std::vector<std::size_t>>();
    m.seed_ = doc.at("seed").get<std::uint64_t>();
    m.rows_ = doc.at("training_rows").get<std::size_t>();
    m.impl_ = load(m.kind_, doc.at("parameters"));
    return m;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model: ") + e.what());
  }
}

}  // namespace snoring
