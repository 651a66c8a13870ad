#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epodetect/cross_validation.hpp"
#include "epodetect/feature_matrix.hpp"
#include "epodetect/hpo.hpp"
#include "epodetect/metrics.hpp"
#include "epodetect/model.hpp"
#include "epodetect/normalizer.hpp"
#include "epodetect/roc.hpp"

namespace epodetect {

struct PipelineOptions {
  std::vector<ModelKind> models{ModelKind::Svc, ModelKind::Forest, ModelKind::Boosted};
  double train_fraction = 0.8;
  std::size_t k_folds = 5;
  std::uint64_t seed = 42;
  std::size_t hpo_trials = 0;  // 0 keeps the default hyperparameters
  bool hpo_pruning = true;
};

struct ModelEvaluation {
  ModelKind kind = ModelKind::Boosted;
  LearnerSpec spec;
  Model model;
  double threshold = 0.5;
  ConfusionMatrix test_confusion;
  MetricsReport test_metrics;
  RocCurve test_roc;
  RocPoint youden{};
  CvResult cv;  // k-fold on the training split
  std::optional<HpoResult> hpo;
};

struct EvaluationReport {
  std::uint64_t seed = 0;
  double train_fraction = 0.8;
  std::size_t k_folds = 5;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t n_train_positive = 0;
  std::size_t n_test_positive = 0;
  std::vector<std::string> features;
  Normalizer normalizer;  // fitted on the training split
  std::vector<ModelEvaluation> models;
};

/// Stratified split, train-only normalisation, optional search (objective:
/// mean CV AUC on the training split), fit on the full training split, then
/// metrics and ROC on the held-out split plus k-fold CV on the training split.
/// Throws DomainError when either split lacks a class.
EvaluationReport evaluate_models(const FeatureMatrix& data, const PipelineOptions& options);

}  // namespace epodetect
