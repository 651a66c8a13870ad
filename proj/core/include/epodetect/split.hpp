#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "epodetect/feature_matrix.hpp"

namespace epodetect {

struct SplitIndices {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

/// Random partition with round(fraction * n) training rows; stratified splits
/// round per class so class ratios stay within one sample. Throws DomainError
/// when fraction is outside (0, 1) or either side would be empty.
SplitIndices train_test_split(std::span<const int> labels, double fraction, std::uint64_t seed,
                              bool stratified);

std::pair<FeatureMatrix, FeatureMatrix> train_test_split(const FeatureMatrix& data, double fraction,
                                                         std::uint64_t seed, bool stratified);

struct FoldAssignment {
  std::vector<std::size_t> fold_of;  // fold index per sample
  std::size_t k = 0;
  std::uint64_t seed = 0;
  bool stratified = false;

  std::vector<std::size_t> test_indices(std::size_t fold) const;
  std::vector<std::size_t> train_indices(std::size_t fold) const;
  std::vector<std::size_t> fold_sizes() const;
};

/// Partitions n samples into k folds of floor(n/k) or ceil(n/k). Stratified
/// assignment also spreads each class evenly (per-fold class counts differ
/// by at most one). Throws DomainError unless 2 <= k <= n.
FoldAssignment kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed,
                     bool stratified);

}  // namespace epodetect
