#include "epodetect/forest.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "epodetect/error.hpp"
#include "epodetect/random.hpp"
#include "tree_grower.hpp"

namespace epodetect {
namespace {

// Draws `k` distinct feature indices, returned in ascending order so the
// split scan keeps its lower-index tie-break.
class RandomFeatureSampler {
 public:
  RandomFeatureSampler(std::size_t d, std::size_t k, Rng& rng) : pool_(d), k_(k), rng_(rng) {}

  std::vector<std::size_t> operator()() {
    std::iota(pool_.begin(), pool_.end(), std::size_t{0});
    for (std::size_t i = 0; i < k_; ++i) {
      const std::size_t j = i + rng_.uniform_index(pool_.size() - i);
      std::swap(pool_[i], pool_[j]);
    }
    std::vector<std::size_t> out(pool_.begin(), pool_.begin() + static_cast<std::ptrdiff_t>(k_));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<std::size_t> pool_;
  std::size_t k_;
  Rng& rng_;
};

DecisionTree grow_one(const FeatureMatrix& data, const ForestParams& params, std::size_t mtry,
                      std::uint64_t tree_seed) {
  Rng rng(tree_seed);
  const std::size_t n = data.rows();
  std::vector<std::size_t> bootstrap(n);
  for (auto& r : bootstrap) r = rng.uniform_index(n);

  detail::GiniCriterion crit{&data, params.positive_weight};
  RandomFeatureSampler sampler(data.cols(), mtry, rng);
  detail::TreeGrower grower(data, crit, detail::GrowConfig{params.max_depth, params.min_leaf}, sampler);
  return grower.grow(std::move(bootstrap));
}

}  // namespace

ForestModel fit_forest(const FeatureMatrix& data, const ForestParams& params, std::uint64_t seed) {
  if (data.rows() < 2) throw DomainError("random forest needs at least two samples");
  if (params.n_trees == 0) throw DomainError("random forest needs at least one tree");
  if (params.min_leaf == 0) throw DomainError("min_leaf must be at least 1");
  if (!(params.positive_weight > 0.0)) throw DomainError("positive_weight must be positive");

  const std::size_t d = data.cols();
  std::size_t mtry = params.max_features;
  if (mtry == 0) mtry = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d))));
  mtry = std::min(mtry, d);

  ForestModel model;
  model.params = params;
  model.n_features = d;
  model.max_features = mtry;
  model.seed = seed;
  model.trees.resize(params.n_trees);

  const std::size_t workers = std::clamp<std::size_t>(params.n_threads, 1, params.n_trees);
  if (workers == 1) {
    for (std::size_t t = 0; t < params.n_trees; ++t) {
      model.trees[t] = grow_one(data, params, mtry, derive_seed(seed, t));
    }
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t t = w; t < params.n_trees; t += workers) {
              model.trees[t] = grow_one(data, params, mtry, derive_seed(seed, t));
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return model;
}

double forest_predict_proba(const ForestModel& model, std::span<const double> x) {
  if (x.size() != model.n_features) throw DomainError("forest input dimension mismatch");
  if (model.trees.empty()) throw DomainError("forest has no trees");
  double sum = 0.0;
  for (const DecisionTree& tree : model.trees) sum += tree.predict(x);
  return sum / static_cast<double>(model.trees.size());
}

}  // namespace epodetect
