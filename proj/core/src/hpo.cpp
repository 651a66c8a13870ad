#include "epodetect/hpo.hpp"

#include <algorithm>
#include <cmath>

#include "epodetect/error.hpp"
#include "epodetect/random.hpp"
#include "epodetect/summary.hpp"

namespace epodetect {
namespace {

void validate_space(const SearchSpace& space) {
  if (space.empty()) throw DomainError("hyperparameter space is empty");
  for (const Axis& axis : space) {
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, CategoricalAxis>) {
            if (d.choices.empty()) throw DomainError("axis '" + axis.name + "' has no choices");
          } else {
            if (d.lo > d.hi) throw DomainError("axis '" + axis.name + "' has lo > hi");
            if constexpr (std::is_same_v<T, LogUniformAxis>) {
              if (!(d.lo > 0.0)) throw DomainError("log-uniform axis '" + axis.name + "' needs lo > 0");
            }
          }
        },
        axis.distribution);
  }
}

double running_mean(const std::vector<double>& scores, std::size_t upto) {
  double sum = 0.0;
  for (std::size_t i = 0; i <= upto; ++i) sum += scores[i];
  return sum / static_cast<double>(upto + 1);
}

const ParamValue& lookup(const TrialParams& params, const std::string& name) {
  const auto it = params.find(name);
  if (it == params.end()) throw DomainError("hyperparameter '" + name + "' not set");
  return it->second;
}

}  // namespace

TrialParams sample_params(const SearchSpace& space, std::uint64_t seed, std::size_t trial) {
  Rng rng(derive_seed(seed, trial));
  TrialParams params;
  for (const Axis& axis : space) {
    params[axis.name] = std::visit(
        [&](const auto& d) -> ParamValue {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, UniformAxis>) {
            return d.lo + (d.hi - d.lo) * rng.uniform01();
          } else if constexpr (std::is_same_v<T, LogUniformAxis>) {
            return std::exp(std::log(d.lo) + (std::log(d.hi) - std::log(d.lo)) * rng.uniform01());
          } else if constexpr (std::is_same_v<T, IntAxis>) {
            const auto span = static_cast<std::size_t>(d.hi - d.lo) + 1;
            return d.lo + static_cast<std::int64_t>(rng.uniform_index(span));
          } else {
            return d.choices[rng.uniform_index(d.choices.size())];
          }
        },
        axis.distribution);
  }
  return params;
}

HpoResult hpo_search(const SearchSpace& space, const FoldObjective& objective,
                     std::size_t n_trials, bool pruning, std::uint64_t seed) {
  validate_space(space);
  if (n_trials == 0) throw DomainError("hyperparameter search needs at least one trial");
  if (objective.n_folds == 0 || !objective.evaluate) throw DomainError("objective is not set");

  HpoResult result;
  std::vector<std::size_t> completed;
  for (std::size_t t = 0; t < n_trials; ++t) {
    TrialRecord trial;
    trial.index = t;
    trial.params = sample_params(space, seed, t);
    for (std::size_t fold = 0; fold < objective.n_folds; ++fold) {
      trial.fold_scores.push_back(objective.evaluate(trial.params, fold));
      const bool last = fold + 1 == objective.n_folds;
      if (!pruning || last || completed.empty()) continue;
      std::vector<double> peers;
      peers.reserve(completed.size());
      for (std::size_t c : completed) peers.push_back(running_mean(result.history[c].fold_scores, fold));
      if (running_mean(trial.fold_scores, fold) < median(peers)) {
        trial.pruned = true;
        break;
      }
    }
    trial.mean_score = running_mean(trial.fold_scores, trial.fold_scores.size() - 1);
    if (!trial.pruned) completed.push_back(result.history.size());
    result.history.push_back(std::move(trial));
  }

  auto better = [](const TrialRecord& a, const TrialRecord& b) { return a.mean_score > b.mean_score; };
  if (completed.empty()) {
    result.all_pruned = true;
    result.best = result.history.front();
    for (const TrialRecord& t : result.history) {
      if (better(t, result.best)) result.best = t;
    }
  } else {
    result.best = result.history[completed.front()];
    for (std::size_t c : completed) {
      if (better(result.history[c], result.best)) result.best = result.history[c];
    }
  }
  return result;
}

double param_as_double(const TrialParams& params, const std::string& name) {
  const ParamValue& v = lookup(params, name);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  throw DomainError("hyperparameter '" + name + "' is not numeric");
}

std::int64_t param_as_int(const TrialParams& params, const std::string& name) {
  const ParamValue& v = lookup(params, name);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* d = std::get_if<double>(&v)) return static_cast<std::int64_t>(std::llround(*d));
  throw DomainError("hyperparameter '" + name + "' is not numeric");
}

std::string param_as_string(const TrialParams& params, const std::string& name) {
  const ParamValue& v = lookup(params, name);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw DomainError("hyperparameter '" + name + "' is not a string");
}

}  // namespace epodetect
