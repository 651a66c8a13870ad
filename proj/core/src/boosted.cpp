#include "epodetect/boosted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "epodetect/error.hpp"
#include "epodetect/random.hpp"
#include "tree_grower.hpp"

namespace epodetect {
namespace {

struct GradStats {
  double g = 0.0;
  double h = 0.0;
  GradStats& operator+=(const GradStats& o) {
    g += o.g;
    h += o.h;
    return *this;
  }
  GradStats& operator-=(const GradStats& o) {
    g -= o.g;
    h -= o.h;
    return *this;
  }
};

struct SecondOrderCriterion {
  using Stats = GradStats;
  const std::vector<double>* grad;
  const std::vector<double>* hess;
  double lambda;
  double gamma;

  Stats row_stats(std::size_t r) const { return {(*grad)[r], (*hess)[r]}; }
  double gain(const Stats& l, const Stats& r, const Stats&) const {
    return second_order_gain(l.g, l.h, r.g, r.h, lambda, gamma);
  }
  double leaf_value(const Stats& s) const { return second_order_leaf_weight(s.g, s.h, lambda); }
  bool splittable(const Stats&) const { return true; }
  double min_gain() const { return 0.0; }
};

struct AllFeatures {
  std::size_t d;
  std::vector<std::size_t> operator()() const {
    std::vector<std::size_t> f(d);
    std::iota(f.begin(), f.end(), std::size_t{0});
    return f;
  }
};

double softplus(double m) {
  return m > 0.0 ? m + std::log1p(std::exp(-m)) : std::log1p(std::exp(m));
}

}  // namespace

double sigmoid(double margin) {
  const double p = margin >= 0.0 ? 1.0 / (1.0 + std::exp(-margin))
                                 : std::exp(margin) / (1.0 + std::exp(margin));
  return std::clamp(p, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

std::pair<double, double> logistic_grad_hess(int label, double margin) {
  const double p = sigmoid(margin);
  return {p - static_cast<double>(label), p * (1.0 - p)};
}

double log_loss(const FeatureMatrix& data, std::span<const double> margins) {
  if (margins.size() != data.rows()) throw DomainError("log_loss: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    sum += softplus(margins[i]) - static_cast<double>(data.label(i)) * margins[i];
  }
  return sum / static_cast<double>(margins.size());
}

BoostedModel fit_boosted(const FeatureMatrix& data, const BoostedParams& params,
                         std::uint64_t seed, std::vector<double>* loss_trace) {
  if (!data.has_both_classes()) throw DomainError("boosting needs both classes in the training data");
  if (!(params.learning_rate > 0.0 && params.learning_rate <= 1.0)) {
    throw DomainError("learning_rate must lie in (0, 1]");
  }
  if (!(params.lambda >= 0.0) || !(params.gamma >= 0.0)) {
    throw DomainError("lambda and gamma must be non-negative");
  }
  if (!(params.subsample > 0.0 && params.subsample <= 1.0)) {
    throw DomainError("subsample must lie in (0, 1]");
  }
  if (params.min_leaf == 0) throw DomainError("min_leaf must be at least 1");
  if (!(params.positive_weight > 0.0)) throw DomainError("positive_weight must be positive");

  const std::size_t n = data.rows();
  const double prior = static_cast<double>(data.positives()) / static_cast<double>(n);

  BoostedModel model;
  model.params = params;
  model.n_features = data.cols();
  model.seed = seed;
  model.base_margin = std::log(prior / (1.0 - prior));

  std::vector<double> margins(n, model.base_margin);
  std::vector<double> grad(n), hess(n);
  if (loss_trace) {
    loss_trace->clear();
    loss_trace->push_back(log_loss(data, margins));
  }

  SecondOrderCriterion crit{&grad, &hess, params.lambda, params.gamma};
  AllFeatures sampler{data.cols()};
  detail::TreeGrower grower(data, crit, detail::GrowConfig{params.max_depth, params.min_leaf}, sampler);

  const auto n_sub = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(params.subsample * static_cast<double>(n))));
  std::vector<std::size_t> all_rows(n);
  std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});

  model.trees.reserve(params.n_rounds);
  for (std::size_t round = 0; round < params.n_rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      auto [g, h] = logistic_grad_hess(data.label(i), margins[i]);
      const double w = data.label(i) == 1 ? params.positive_weight : 1.0;
      grad[i] = w * g;
      hess[i] = w * h;
    }
    std::vector<std::size_t> rows = all_rows;
    if (n_sub < n) {
      Rng rng(derive_seed(seed, round));
      rng.shuffle(std::span<std::size_t>(rows));
      rows.resize(n_sub);
      std::sort(rows.begin(), rows.end());
    }
    DecisionTree tree = grower.grow(std::move(rows));
    for (std::size_t i = 0; i < n; ++i) {
      margins[i] += params.learning_rate * tree.predict(data.row(i));
    }
    model.trees.push_back(std::move(tree));
    if (loss_trace) loss_trace->push_back(log_loss(data, margins));
  }
  return model;
}

double boosted_margin(const BoostedModel& model, std::span<const double> x) {
  if (x.size() != model.n_features) throw DomainError("boosted model input dimension mismatch");
  double sum = 0.0;
  for (const DecisionTree& tree : model.trees) sum += tree.predict(x);
  return model.base_margin + model.params.learning_rate * sum;
}

double boosted_predict_proba(const BoostedModel& model, std::span<const double> x) {
  return sigmoid(boosted_margin(model, x));
}

}  // namespace epodetect
