#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace epodetect {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Calls a sample positive when its score is strictly above `threshold`.
ConfusionMatrix confusion_at(std::span<const int> labels, std::span<const double> scores,
                             double threshold);

/// Ratios with a zero denominator are absent rather than 0.
struct MetricsReport {
  double accuracy = 0.0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;  // 2PR / (P + R)
  /// P R / (P + R), the variant printed without the factor 2; kept so reports
  /// can show both when they differ.
  std::optional<double> f1_unscaled;
  std::optional<double> sensitivity;  // == recall
  std::optional<double> specificity;
};

/// Throws DomainError on an empty matrix.
MetricsReport metrics(const ConfusionMatrix& cm);

/// Published reference operating point of the prior indirect test.
struct BaselineReference {
  double sensitivity;
  double specificity;
  double auc;
};
inline constexpr BaselineReference kSotaBaseline{0.45, 1.0, 0.84};

}  // namespace epodetect
