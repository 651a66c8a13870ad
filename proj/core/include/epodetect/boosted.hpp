#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "epodetect/feature_matrix.hpp"
#include "epodetect/tree.hpp"

namespace epodetect {

struct BoostedParams {
  std::size_t n_rounds = 200;
  double learning_rate = 0.1;
  double lambda = 1.0;  // L2 penalty on leaf weights
  double gamma = 0.0;   // minimum gain per split
  std::size_t max_depth = 4;
  std::size_t min_leaf = 1;
  double subsample = 1.0;  // row fraction per round, drawn without replacement
  double positive_weight = 1.0;  // multiplies g and h of rhEPO rows
};

/// Additive logistic model: P(y = 1 | x) = sigmoid(base_margin + eta * sum_t tree_t(x)).
struct BoostedModel {
  std::vector<DecisionTree> trees;  // leaves hold unscaled weights -G/(H+lambda)
  BoostedParams params;
  double base_margin = 0.0;
  std::size_t n_features = 0;
  std::uint64_t seed = 0;
};

double sigmoid(double margin);

/// Gradient and Hessian of the logistic loss -[y ln p + (1-y) ln(1-p)] with
/// respect to the margin: g = p - y, h = p (1 - p).
std::pair<double, double> logistic_grad_hess(int label, double margin);

/// Mean logistic loss of `margins` against the labels of `data`.
double log_loss(const FeatureMatrix& data, std::span<const double> margins);

/// Second-order gradient boosting with regression trees. The base margin is
/// the log-odds of the positive-class prior. Each round grows one tree on the
/// current (g, h) statistics; a split is taken only when its regularised gain
/// is positive. When `loss_trace` is given it receives the training log-loss
/// before the first round and after every round.
/// Throws DomainError on single-class data or invalid params.
BoostedModel fit_boosted(const FeatureMatrix& data, const BoostedParams& params,
                         std::uint64_t seed, std::vector<double>* loss_trace = nullptr);

double boosted_margin(const BoostedModel& model, std::span<const double> x);
double boosted_predict_proba(const BoostedModel& model, std::span<const double> x);

}  // namespace epodetect
