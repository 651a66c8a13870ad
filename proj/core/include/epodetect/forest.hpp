#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "epodetect/feature_matrix.hpp"
#include "epodetect/tree.hpp"

namespace epodetect {

struct ForestParams {
  std::size_t n_trees = 100;
  std::size_t max_depth = 8;
  std::size_t min_leaf = 1;
  std::size_t max_features = 0;  // features tried per split; 0 = ceil(sqrt(d))
  double positive_weight = 1.0;  // multiplies rhEPO counts in the Gini impurity
  std::size_t n_threads = 1;     // tree fitting parallelism; results do not depend on it
};

struct ForestModel {
  std::vector<DecisionTree> trees;  // leaves hold P(class 1)
  ForestParams params;
  std::size_t n_features = 0;
  std::size_t max_features = 0;  // resolved per-split feature count
  std::uint64_t seed = 0;

  double feature_subsample() const {
    return n_features ? static_cast<double>(max_features) / static_cast<double>(n_features) : 0.0;
  }
};

/// Random forest of Gini CART trees, each on a size-n bootstrap resample with
/// a fresh random feature subset per split. Tree t draws from its own stream
/// derived from (seed, t), so the forest is identical for any thread count.
/// Throws DomainError when n < 2 or params are invalid.
ForestModel fit_forest(const FeatureMatrix& data, const ForestParams& params, std::uint64_t seed);

/// Mean of the per-tree leaf probabilities.
double forest_predict_proba(const ForestModel& model, std::span<const double> x);

}  // namespace epodetect
