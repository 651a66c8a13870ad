#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "epodetect/profile.hpp"

namespace epodetect {

/// Dense row-major design matrix with binary labels (1 = rhEPO, 0 = control).
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  /// Throws DomainError unless values.size() == labels.size() * names.size(),
  /// every value is finite and every label is 0 or 1.
  FeatureMatrix(std::vector<double> values, std::vector<int> labels,
                std::vector<std::string> feature_names);

  std::size_t rows() const noexcept { return labels_.size(); }
  std::size_t cols() const noexcept { return names_.size(); }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols(), cols()};
  }
  double at(std::size_t i, std::size_t j) const { return values_[i * cols() + j]; }
  int label(std::size_t i) const { return labels_[i]; }
  std::span<const int> labels() const noexcept { return labels_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<std::string>& feature_names() const noexcept { return names_; }

  std::size_t positives() const;
  bool has_both_classes() const;

  /// Rows in the given order (duplicates allowed).
  FeatureMatrix subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<double> values_;
  std::vector<int> labels_;
  std::vector<std::string> names_;
};

/// Builds a matrix from the samples at `altitude` using `features` as columns.
/// The cohort must have no missing values among those features.
FeatureMatrix make_feature_matrix(const Cohort& cohort, Altitude altitude,
                                  std::span<const Parameter> features);

}  // namespace epodetect
