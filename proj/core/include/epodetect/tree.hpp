#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "epodetect/feature_matrix.hpp"

namespace epodetect {

/// Internal nodes route x[feature] <= threshold to `left`.
struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf output

  bool is_leaf() const noexcept { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Binary tree stored as a node array rooted at index 0.
class DecisionTree {
 public:
  DecisionTree() = default;
  /// Throws DomainError if the node graph is not a proper binary tree with
  /// finite thresholds.
  explicit DecisionTree(std::vector<TreeNode> nodes);

  double predict(std::span<const double> x) const;
  std::span<const TreeNode> nodes() const noexcept { return nodes_; }
  std::size_t depth() const;
  std::size_t leaf_count() const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  std::vector<TreeNode> nodes_;
};

struct SplitCandidate {
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

/// Midpoint between consecutive distinct values, nudged so that `lo`
/// always goes left.
double split_threshold(double lo, double hi);

/// Best Gini split for the given rows (duplicates allowed) over `features`,
/// by exhaustive scan of midpoints. Gain is the weighted impurity decrease
/// W*G(parent) - W_L*G(left) - W_R*G(right) with positive rows weighted by
/// `positive_weight`. Ties go to the lower feature index, then the lower
/// threshold. Returns nullopt when no split improves impurity or respects
/// `min_leaf`.
std::optional<SplitCandidate> best_gini_split(const FeatureMatrix& data,
                                              std::span<const std::size_t> rows,
                                              std::span<const std::size_t> features,
                                              std::size_t min_leaf, double positive_weight);

/// Gini impurity 1 - p0^2 - p1^2 for weighted class totals.
double gini_impurity(double w0, double w1);

/// Second-order split gain 1/2 [GL^2/(HL+l) + GR^2/(HR+l) - G^2/(H+l)] - gamma.
double second_order_gain(double g_left, double h_left, double g_right, double h_right,
                         double lambda, double gamma);

/// Leaf weight -G / (H + lambda) minimising G w + 1/2 (H + lambda) w^2.
double second_order_leaf_weight(double g, double h, double lambda);

}  // namespace epodetect
