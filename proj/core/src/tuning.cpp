#include "epodetect/tuning.hpp"

#include <algorithm>

#include "epodetect/error.hpp"

namespace epodetect {
namespace {

std::size_t as_size(const TrialParams& params, const std::string& name) {
  const std::int64_t v = param_as_int(params, name);
  if (v < 0) throw DomainError("hyperparameter '" + name + "' is negative");
  return static_cast<std::size_t>(v);
}

}  // namespace

LearnerSpec default_learner(ModelKind kind, std::size_t n_features) {
  switch (kind) {
    case ModelKind::Svc: {
      SvcParams p;
      p.kernel = RbfKernel{1.0 / static_cast<double>(std::max<std::size_t>(n_features, 1))};
      return p;
    }
    case ModelKind::Forest:
      return ForestParams{};
    case ModelKind::Boosted:
      return BoostedParams{};
  }
  throw DomainError("unknown model kind");
}

SearchSpace default_search_space(ModelKind kind) {
  switch (kind) {
    case ModelKind::Svc:
      return {{"c", LogUniformAxis{0.1, 100.0}}, {"gamma", LogUniformAxis{1e-3, 1.0}}};
    case ModelKind::Forest:
      return {{"n_trees", IntAxis{50, 200}},
              {"max_depth", IntAxis{3, 12}},
              {"min_leaf", IntAxis{1, 5}}};
    case ModelKind::Boosted:
      return {{"n_rounds", CategoricalAxis{{std::int64_t{50}, std::int64_t{100}, std::int64_t{200}}}},
              {"learning_rate", LogUniformAxis{0.02, 0.3}},
              {"max_depth", IntAxis{2, 6}},
              {"lambda", LogUniformAxis{0.1, 10.0}},
              {"gamma", UniformAxis{0.0, 1.0}},
              {"subsample", UniformAxis{0.6, 1.0}}};
  }
  throw DomainError("unknown model kind");
}

LearnerSpec learner_from_params(ModelKind kind, const TrialParams& params, std::size_t n_features) {
  LearnerSpec spec = default_learner(kind, n_features);
  auto has = [&](const char* name) { return params.contains(name); };
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SvcParams>) {
          if (has("c")) p.c = param_as_double(params, "c");
          if (has("gamma")) p.kernel = RbfKernel{param_as_double(params, "gamma")};
        } else if constexpr (std::is_same_v<T, ForestParams>) {
          if (has("n_trees")) p.n_trees = as_size(params, "n_trees");
          if (has("max_depth")) p.max_depth = as_size(params, "max_depth");
          if (has("min_leaf")) p.min_leaf = as_size(params, "min_leaf");
          if (has("max_features")) p.max_features = as_size(params, "max_features");
        } else {
          if (has("n_rounds")) p.n_rounds = as_size(params, "n_rounds");
          if (has("learning_rate")) p.learning_rate = param_as_double(params, "learning_rate");
          if (has("max_depth")) p.max_depth = as_size(params, "max_depth");
          if (has("lambda")) p.lambda = param_as_double(params, "lambda");
          if (has("gamma")) p.gamma = param_as_double(params, "gamma");
          if (has("subsample")) p.subsample = param_as_double(params, "subsample");
        }
      },
      spec);
  return spec;
}

TrialParams learner_params(const LearnerSpec& spec) {
  TrialParams out;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SvcParams>) {
          out["c"] = p.c;
          std::visit(
              [&](const auto& k) {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, LinearKernel>) {
                  out["kernel"] = std::string("linear");
                } else if constexpr (std::is_same_v<K, RbfKernel>) {
                  out["kernel"] = std::string("rbf");
                  out["gamma"] = k.gamma;
                } else {
                  out["kernel"] = std::string("poly");
                  out["degree"] = std::int64_t{k.degree};
                  out["coef0"] = k.coef0;
                }
              },
              p.kernel);
        } else if constexpr (std::is_same_v<T, ForestParams>) {
          out["n_trees"] = static_cast<std::int64_t>(p.n_trees);
          out["max_depth"] = static_cast<std::int64_t>(p.max_depth);
          out["min_leaf"] = static_cast<std::int64_t>(p.min_leaf);
          out["max_features"] = static_cast<std::int64_t>(p.max_features);
        } else {
          out["n_rounds"] = static_cast<std::int64_t>(p.n_rounds);
          out["learning_rate"] = p.learning_rate;
          out["max_depth"] = static_cast<std::int64_t>(p.max_depth);
          out["lambda"] = p.lambda;
          out["gamma"] = p.gamma;
          out["subsample"] = p.subsample;
        }
      },
      spec);
  return out;
}

}  // namespace epodetect
