#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "epodetect/feature_matrix.hpp"
#include "epodetect/metrics.hpp"
#include "epodetect/model.hpp"
#include "epodetect/split.hpp"

namespace epodetect {

/// A trained scorer as seen by the harness.
struct FittedScorer {
  std::function<double(std::span<const double>)> score;
  double threshold = 0.5;
};

/// Trains on already-normalised rows.
using FitFunction = std::function<FittedScorer(const FeatureMatrix& train, std::uint64_t seed)>;

FitFunction make_fit_function(const LearnerSpec& spec);

struct FoldResult {
  std::size_t fold = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  ConfusionMatrix confusion;
  MetricsReport metrics;
  std::optional<double> auc;  // absent when the held-out fold has one class
};

struct CvSummary {
  double accuracy = 0.0;
  std::optional<double> f1;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::optional<double> auc;
};

struct CvResult {
  std::vector<FoldResult> folds;
  CvSummary mean;  // averages over the folds where each metric is defined
};

/// One fold: the normaliser is fitted on the training folds only, both sides
/// are transformed, the model is fitted and scored on the held-out fold.
FoldResult evaluate_fold(const FeatureMatrix& data, const FoldAssignment& folds, std::size_t fold,
                         const FitFunction& fit, std::uint64_t seed);

CvSummary summarize_folds(std::span<const FoldResult> folds);

/// Stratified k-fold cross-validation. Deterministic in (data, fit, k, seed).
CvResult cross_validate(const FeatureMatrix& data, const FitFunction& fit, std::size_t k,
                        std::uint64_t seed, bool stratified = true);

CvResult cross_validate(const FeatureMatrix& data, const LearnerSpec& spec, std::size_t k,
                        std::uint64_t seed, bool stratified = true);

}  // namespace epodetect
