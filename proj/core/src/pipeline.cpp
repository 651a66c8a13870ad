#include "epodetect/pipeline.hpp"

#include "epodetect/error.hpp"
#include "epodetect/random.hpp"
#include "epodetect/split.hpp"
#include "epodetect/tuning.hpp"

namespace epodetect {
namespace {

// Independent substreams of the run seed.
enum Stream : std::uint64_t { kSplitStream = 0, kCvStream = 1, kFitStream = 2, kSearchStream = 3 };

HpoResult tune(ModelKind kind, const FeatureMatrix& train, const PipelineOptions& options) {
  const std::uint64_t cv_seed = derive_seed(options.seed, kCvStream);
  const FoldAssignment folds = kfold(train.labels(), options.k_folds, cv_seed, true);
  FoldObjective objective;
  objective.n_folds = options.k_folds;
  objective.evaluate = [&](const TrialParams& params, std::size_t fold) {
    const FitFunction fit = make_fit_function(learner_from_params(kind, params, train.cols()));
    return evaluate_fold(train, folds, fold, fit, cv_seed).auc.value_or(0.5);
  };
  const std::uint64_t search_seed =
      derive_seed(derive_seed(options.seed, kSearchStream), static_cast<std::uint64_t>(kind));
  return hpo_search(default_search_space(kind), objective, options.hpo_trials,
                    options.hpo_pruning, search_seed);
}

}  // namespace

EvaluationReport evaluate_models(const FeatureMatrix& data, const PipelineOptions& options) {
  if (options.models.empty()) throw DomainError("no models requested");
  auto [train_raw, test_raw] = train_test_split(data, options.train_fraction,
                                                derive_seed(options.seed, kSplitStream), true);
  if (!train_raw.has_both_classes() || !test_raw.has_both_classes()) {
    throw DomainError("train and test splits must both contain both classes");
  }

  EvaluationReport report;
  report.seed = options.seed;
  report.train_fraction = options.train_fraction;
  report.k_folds = options.k_folds;
  report.n_train = train_raw.rows();
  report.n_test = test_raw.rows();
  report.n_train_positive = train_raw.positives();
  report.n_test_positive = test_raw.positives();
  report.features = data.feature_names();
  report.normalizer = Normalizer::fit(train_raw);
  const FeatureMatrix train = report.normalizer.transform(train_raw);
  const FeatureMatrix test = report.normalizer.transform(test_raw);

  for (ModelKind kind : options.models) {
    ModelEvaluation eval;
    eval.kind = kind;
    if (options.hpo_trials > 0) {
      eval.hpo = tune(kind, train_raw, options);
      eval.spec = learner_from_params(kind, eval.hpo->best.params, data.cols());
    } else {
      eval.spec = default_learner(kind, data.cols());
    }
    eval.model = fit_model(eval.spec, train, derive_seed(options.seed, kFitStream));
    eval.threshold = default_threshold(kind);

    std::vector<double> scores(test.rows());
    for (std::size_t i = 0; i < test.rows(); ++i) scores[i] = score(eval.model, test.row(i));
    eval.test_confusion = confusion_at(test.labels(), scores, eval.threshold);
    eval.test_metrics = metrics(eval.test_confusion);
    eval.test_roc = roc_curve(test.labels(), scores);
    eval.youden = youden_point(eval.test_roc);

    eval.cv = cross_validate(train_raw, eval.spec, options.k_folds,
                             derive_seed(options.seed, kCvStream));
    report.models.push_back(std::move(eval));
  }
  return report;
}

}  // namespace epodetect
