#include "epodetect/tree.hpp"

#include <cmath>
#include <limits>

#include "epodetect/error.hpp"
#include "tree_grower.hpp"

namespace epodetect {

DecisionTree::DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw DomainError("decision tree has no nodes");
  const auto n = static_cast<int>(nodes_.size());
  std::vector<int> parents(nodes_.size(), 0);
  for (int i = 0; i < n; ++i) {
    const TreeNode& node = nodes_[static_cast<std::size_t>(i)];
    if (node.is_leaf()) {
      if (!std::isfinite(node.value)) throw DomainError("tree leaf value is not finite");
      continue;
    }
    // Children are stored after their parent.
    if (node.left <= i || node.right <= i || node.left >= n || node.right >= n ||
        node.left == node.right) {
      throw DomainError("tree node has invalid children");
    }
    if (!std::isfinite(node.threshold)) throw DomainError("tree threshold is not finite");
    ++parents[static_cast<std::size_t>(node.left)];
    ++parents[static_cast<std::size_t>(node.right)];
  }
  for (std::size_t i = 1; i < parents.size(); ++i) {
    if (parents[i] != 1) throw DomainError("tree node " + std::to_string(i) + " is not reachable exactly once");
  }
}

double DecisionTree::predict(std::span<const double> x) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& node = nodes_[i];
    const auto f = static_cast<std::size_t>(node.feature);
    if (f >= x.size()) throw DomainError("tree input dimension mismatch");
    i = static_cast<std::size_t>(x[f] <= node.threshold ? node.left : node.right);
  }
  return nodes_[i].value;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> d(nodes_.size(), 0);
  std::size_t best = 0;
  // Children always follow their parent in storage order.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& node = nodes_[i];
    best = std::max(best, d[i]);
    if (!node.is_leaf()) {
      d[static_cast<std::size_t>(node.left)] = d[i] + 1;
      d[static_cast<std::size_t>(node.right)] = d[i] + 1;
    }
  }
  return best;
}

std::size_t DecisionTree::leaf_count() const {
  std::size_t n = 0;
  for (const TreeNode& node : nodes_) n += node.is_leaf() ? 1 : 0;
  return n;
}

double split_threshold(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid < hi ? mid : lo;
}

double gini_impurity(double w0, double w1) {
  const double w = w0 + w1;
  if (w <= 0.0) return 0.0;
  const double p0 = w0 / w;
  const double p1 = w1 / w;
  return 1.0 - p0 * p0 - p1 * p1;
}

double second_order_gain(double g_left, double h_left, double g_right, double h_right,
                         double lambda, double gamma) {
  auto score = [lambda](double g, double h) {
    const double denom = h + lambda;
    return denom > 0.0 ? g * g / denom : 0.0;
  };
  const double g = g_left + g_right;
  const double h = h_left + h_right;
  return 0.5 * (score(g_left, h_left) + score(g_right, h_right) - score(g, h)) - gamma;
}

double second_order_leaf_weight(double g, double h, double lambda) {
  const double denom = h + lambda;
  return denom > 0.0 ? -g / denom : 0.0;
}

std::optional<SplitCandidate> best_gini_split(const FeatureMatrix& data,
                                              std::span<const std::size_t> rows,
                                              std::span<const std::size_t> features,
                                              std::size_t min_leaf, double positive_weight) {
  detail::GiniCriterion crit{&data, positive_weight};
  return detail::find_best_split(data, rows, features, crit, min_leaf);
}

}  // namespace epodetect
