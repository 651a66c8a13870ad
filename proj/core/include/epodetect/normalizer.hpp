#pragma once

#include <span>
#include <vector>

#include "epodetect/feature_matrix.hpp"

namespace epodetect {

/// Per-feature z-scoring with statistics taken from training rows only.
/// Features with zero spread are centred but not scaled.
class Normalizer {
 public:
  Normalizer() = default;
  Normalizer(std::vector<double> means, std::vector<double> stds);

  /// Mean and population standard deviation of every column.
  static Normalizer fit(const FeatureMatrix& train);

  std::vector<double> transform_row(std::span<const double> row) const;
  FeatureMatrix transform(const FeatureMatrix& data) const;

  const std::vector<double>& means() const noexcept { return means_; }
  const std::vector<double>& stds() const noexcept { return stds_; }

  friend bool operator==(const Normalizer&, const Normalizer&) = default;

 private:
  std::vector<double> means_;
  std::vector<double> stds_;
};

}  // namespace epodetect
