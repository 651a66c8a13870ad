#include "epodetect/metrics.hpp"

#include "epodetect/error.hpp"

namespace epodetect {
namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionMatrix confusion_at(std::span<const int> labels, std::span<const double> scores,
                             double threshold) {
  if (labels.size() != scores.size()) throw DomainError("labels and scores differ in length");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool predicted = scores[i] > threshold;
    if (labels[i] == 1) {
      (predicted ? cm.tp : cm.fn)++;
    } else {
      (predicted ? cm.fp : cm.tn)++;
    }
  }
  return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw DomainError("metrics of an empty confusion matrix");
  MetricsReport r;
  r.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  r.precision = ratio(cm.tp, cm.tp + cm.fp);
  r.recall = ratio(cm.tp, cm.tp + cm.fn);
  r.sensitivity = r.recall;
  r.specificity = ratio(cm.tn, cm.tn + cm.fp);
  if (r.precision && r.recall) {
    const double p = *r.precision;
    const double q = *r.recall;
    if (p + q > 0.0) {
      r.f1 = 2.0 * p * q / (p + q);
      r.f1_unscaled = p * q / (p + q);
    } else {
      r.f1 = 0.0;
      r.f1_unscaled = 0.0;
    }
  }
  return r;
}

}  // namespace epodetect
