#include "epodetect/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "epodetect/error.hpp"
#include "epodetect/random.hpp"

namespace epodetect {
namespace {

std::vector<std::size_t> indices_with_label(std::span<const int> labels, int y) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == y) out.push_back(i);
  }
  return out;
}

}  // namespace

SplitIndices train_test_split(std::span<const int> labels, double fraction, std::uint64_t seed,
                              bool stratified) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw DomainError("split fraction must lie in (0, 1)");
  Rng rng(seed);
  SplitIndices out;
  auto take = [&](std::vector<std::size_t> pool) {
    rng.shuffle(std::span<std::size_t>(pool));
    const auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(pool.size())));
    out.train.insert(out.train.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test.insert(out.test.end(), pool.begin() + static_cast<std::ptrdiff_t>(n_train), pool.end());
  };
  if (stratified) {
    take(indices_with_label(labels, 0));
    take(indices_with_label(labels, 1));
  } else {
    std::vector<std::size_t> all(labels.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    take(std::move(all));
  }
  if (out.train.empty() || out.test.empty()) {
    throw DomainError("split fraction leaves the training or test side empty");
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<FeatureMatrix, FeatureMatrix> train_test_split(const FeatureMatrix& data, double fraction,
                                                         std::uint64_t seed, bool stratified) {
  const auto idx = train_test_split(data.labels(), fraction, seed, stratified);
  return {data.subset(idx.train), data.subset(idx.test)};
}

std::vector<std::size_t> FoldAssignment::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::fold_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t f : fold_of) ++sizes[f];
  return sizes;
}

FoldAssignment kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed,
                     bool stratified) {
  const std::size_t n = labels.size();
  if (k < 2) throw DomainError("k-fold needs k >= 2");
  if (k > n) throw DomainError("k-fold needs k <= n (k = " + std::to_string(k) +
                               ", n = " + std::to_string(n) + ")");
  Rng rng(seed);
  // Dealing a shuffled sequence round-robin gives fold sizes floor/ceil(n/k);
  // concatenating per-class sequences keeps each class balanced as well.
  std::vector<std::size_t> order;
  order.reserve(n);
  if (stratified) {
    for (int y : {0, 1}) {
      auto cls = indices_with_label(labels, y);
      rng.shuffle(std::span<std::size_t>(cls));
      order.insert(order.end(), cls.begin(), cls.end());
    }
  } else {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
  }
  FoldAssignment fa;
  fa.k = k;
  fa.seed = seed;
  fa.stratified = stratified;
  fa.fold_of.assign(n, 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) fa.fold_of[order[pos]] = pos % k;
  return fa;
}

}  // namespace epodetect
