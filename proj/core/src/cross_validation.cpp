#include "epodetect/cross_validation.hpp"

#include <memory>

#include "epodetect/error.hpp"
#include "epodetect/normalizer.hpp"
#include "epodetect/random.hpp"
#include "epodetect/roc.hpp"

namespace epodetect {

FitFunction make_fit_function(const LearnerSpec& spec) {
  return [spec](const FeatureMatrix& train, std::uint64_t seed) {
    auto model = std::make_shared<const Model>(fit_model(spec, train, seed));
    return FittedScorer{[model](std::span<const double> x) { return score(*model, x); },
                        default_threshold(kind_of(spec))};
  };
}

FoldResult evaluate_fold(const FeatureMatrix& data, const FoldAssignment& folds, std::size_t fold,
                         const FitFunction& fit, std::uint64_t seed) {
  if (fold >= folds.k) throw DomainError("fold index out of range");
  const auto train_idx = folds.train_indices(fold);
  const auto test_idx = folds.test_indices(fold);
  const FeatureMatrix train_raw = data.subset(train_idx);
  const FeatureMatrix test_raw = data.subset(test_idx);
  const Normalizer norm = Normalizer::fit(train_raw);
  const FeatureMatrix train = norm.transform(train_raw);
  const FeatureMatrix test = norm.transform(test_raw);

  const FittedScorer scorer = fit(train, derive_seed(seed, fold));
  std::vector<double> scores(test.rows());
  for (std::size_t i = 0; i < test.rows(); ++i) scores[i] = scorer.score(test.row(i));

  FoldResult r;
  r.fold = fold;
  r.n_train = train.rows();
  r.n_test = test.rows();
  r.confusion = confusion_at(test.labels(), scores, scorer.threshold);
  r.metrics = metrics(r.confusion);
  if (test.has_both_classes()) r.auc = roc_curve(test.labels(), scores).auc;
  return r;
}

CvSummary summarize_folds(std::span<const FoldResult> folds) {
  CvSummary s;
  if (folds.empty()) return s;
  auto mean_of = [&](auto get) -> std::optional<double> {
    double sum = 0.0;
    std::size_t n = 0;
    for (const FoldResult& f : folds) {
      if (const std::optional<double> v = get(f)) {
        sum += *v;
        ++n;
      }
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  };
  s.accuracy = *mean_of([](const FoldResult& f) { return std::optional<double>(f.metrics.accuracy); });
  s.f1 = mean_of([](const FoldResult& f) { return f.metrics.f1; });
  s.sensitivity = mean_of([](const FoldResult& f) { return f.metrics.sensitivity; });
  s.specificity = mean_of([](const FoldResult& f) { return f.metrics.specificity; });
  s.auc = mean_of([](const FoldResult& f) { return f.auc; });
  return s;
}

CvResult cross_validate(const FeatureMatrix& data, const FitFunction& fit, std::size_t k,
                        std::uint64_t seed, bool stratified) {
  const FoldAssignment folds = kfold(data.labels(), k, seed, stratified);
  CvResult result;
  for (std::size_t f = 0; f < k; ++f) {
    result.folds.push_back(evaluate_fold(data, folds, f, fit, seed));
  }
  result.mean = summarize_folds(result.folds);
  return result;
}

CvResult cross_validate(const FeatureMatrix& data, const LearnerSpec& spec, std::size_t k,
                        std::uint64_t seed, bool stratified) {
  return cross_validate(data, make_fit_function(spec), k, seed, stratified);
}

}  // namespace epodetect
