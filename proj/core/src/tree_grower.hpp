#pragma once

// Generic CART growth shared by the Gini forest and the second-order booster.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "epodetect/feature_matrix.hpp"
#include "epodetect/tree.hpp"

namespace epodetect::detail {

struct GrowConfig {
  std::size_t max_depth = 8;
  std::size_t min_leaf = 1;
};

// Criterion must provide:
//   using Stats = ...;                      additive node statistics
//   Stats row_stats(std::size_t row) const;
//   double gain(const Stats& l, const Stats& r, const Stats& total) const;
//   double leaf_value(const Stats&) const;
//   bool splittable(const Stats&) const;
//   double min_gain() const;               split only when gain > min_gain
template <class Criterion>
std::optional<SplitCandidate> find_best_split(const FeatureMatrix& data,
                                              std::span<const std::size_t> rows,
                                              std::span<const std::size_t> features,
                                              const Criterion& crit, std::size_t min_leaf) {
  using Stats = typename Criterion::Stats;
  const std::size_t m = rows.size();
  if (m < 2 * std::max<std::size_t>(min_leaf, 1)) return std::nullopt;

  Stats total{};
  for (std::size_t r : rows) total += crit.row_stats(r);

  std::optional<SplitCandidate> best;
  std::vector<std::pair<double, std::size_t>> order(m);
  for (std::size_t f : features) {
    for (std::size_t k = 0; k < m; ++k) order[k] = {data.at(rows[k], f), rows[k]};
    std::sort(order.begin(), order.end());
    Stats left{};
    for (std::size_t k = 1; k < m; ++k) {
      left += crit.row_stats(order[k - 1].second);
      if (order[k - 1].first == order[k].first) continue;
      if (k < min_leaf || m - k < min_leaf) continue;
      Stats right = total;
      right -= left;
      const double g = crit.gain(left, right, total);
      // Gains equal up to rounding count as ties, which keep the earlier candidate.
      if (g > crit.min_gain() &&
          (!best || g > best->gain + 1e-12 * std::max(1.0, std::abs(best->gain)))) {
        best = SplitCandidate{f, split_threshold(order[k - 1].first, order[k].first), g};
      }
    }
  }
  return best;
}

template <class Criterion, class FeatureSampler>
class TreeGrower {
 public:
  TreeGrower(const FeatureMatrix& data, const Criterion& crit, GrowConfig cfg,
             FeatureSampler& sampler)
      : data_(data), crit_(crit), cfg_(cfg), sampler_(sampler) {}

  DecisionTree grow(std::vector<std::size_t> rows) {
    nodes_.clear();
    build(std::move(rows), 0);
    return DecisionTree(std::move(nodes_));
  }

 private:
  int build(std::vector<std::size_t> rows, std::size_t depth) {
    using Stats = typename Criterion::Stats;
    Stats total{};
    for (std::size_t r : rows) total += crit_.row_stats(r);

    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back(TreeNode{-1, 0.0, -1, -1, crit_.leaf_value(total)});
    if (depth >= cfg_.max_depth || !crit_.splittable(total)) return index;

    const std::vector<std::size_t> features = sampler_();
    const auto split = find_best_split(data_, rows, features, crit_, cfg_.min_leaf);
    if (!split) return index;

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : rows) {
      (data_.at(r, split->feature) <= split->threshold ? left_rows : right_rows).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int left = build(std::move(left_rows), depth + 1);
    const int right = build(std::move(right_rows), depth + 1);
    TreeNode& node = nodes_[static_cast<std::size_t>(index)];
    node.feature = static_cast<int>(split->feature);
    node.threshold = split->threshold;
    node.left = left;
    node.right = right;
    return index;
  }

  const FeatureMatrix& data_;
  const Criterion& crit_;
  GrowConfig cfg_;
  FeatureSampler& sampler_;
  std::vector<TreeNode> nodes_;
};

struct GiniStats {
  double w0 = 0.0;
  double w1 = 0.0;
  GiniStats& operator+=(const GiniStats& o) {
    w0 += o.w0;
    w1 += o.w1;
    return *this;
  }
  GiniStats& operator-=(const GiniStats& o) {
    w0 -= o.w0;
    w1 -= o.w1;
    return *this;
  }
};

struct GiniCriterion {
  using Stats = GiniStats;
  const FeatureMatrix* data;
  double positive_weight = 1.0;

  Stats row_stats(std::size_t r) const {
    return data->label(r) == 1 ? Stats{0.0, positive_weight} : Stats{1.0, 0.0};
  }
  double gain(const Stats& l, const Stats& r, const Stats& t) const {
    return (t.w0 + t.w1) * gini_impurity(t.w0, t.w1) -
           (l.w0 + l.w1) * gini_impurity(l.w0, l.w1) -
           (r.w0 + r.w1) * gini_impurity(r.w0, r.w1);
  }
  double leaf_value(const Stats& s) const {
    const double w = s.w0 + s.w1;
    return w > 0.0 ? s.w1 / w : 0.0;
  }
  bool splittable(const Stats& s) const { return s.w0 > 0.0 && s.w1 > 0.0; }
  double min_gain() const { return 1e-12; }
};

}  // namespace epodetect::detail
