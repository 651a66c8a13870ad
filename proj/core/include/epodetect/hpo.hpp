#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace epodetect {

using ParamValue = std::variant<double, std::int64_t, std::string>;
using TrialParams = std::map<std::string, ParamValue>;

struct UniformAxis {
  double lo;
  double hi;
};
struct LogUniformAxis {
  double lo;  // > 0
  double hi;
};
struct IntAxis {
  std::int64_t lo;  // inclusive
  std::int64_t hi;  // inclusive
};
struct CategoricalAxis {
  std::vector<ParamValue> choices;
};

struct Axis {
  std::string name;
  std::variant<UniformAxis, LogUniformAxis, IntAxis, CategoricalAxis> distribution;
};

using SearchSpace = std::vector<Axis>;

/// Scores one trial fold by fold; higher is better.
struct FoldObjective {
  std::size_t n_folds = 5;
  std::function<double(const TrialParams& params, std::size_t fold)> evaluate;
};

struct TrialRecord {
  std::size_t index = 0;
  TrialParams params;
  std::vector<double> fold_scores;  // partial when pruned
  double mean_score = 0.0;          // mean of the recorded folds
  bool pruned = false;
};

struct HpoResult {
  TrialRecord best;
  std::vector<TrialRecord> history;
  /// Set when no trial ran to completion; `best` is then the best partial.
  bool all_pruned = false;
};

/// Draws one point; trial i uses the stream derived from (seed, i).
TrialParams sample_params(const SearchSpace& space, std::uint64_t seed, std::size_t trial);

/// Random search. With pruning, a trial stops after fold j when its running
/// mean is below the median of the completed trials' running means at fold j.
/// Returns the completed trial with the best mean (earliest on ties).
/// Throws DomainError on an empty or invalid space or n_trials == 0.
HpoResult hpo_search(const SearchSpace& space, const FoldObjective& objective,
                     std::size_t n_trials, bool pruning, std::uint64_t seed);

double param_as_double(const TrialParams& params, const std::string& name);
std::int64_t param_as_int(const TrialParams& params, const std::string& name);
std::string param_as_string(const TrialParams& params, const std::string& name);

}  // namespace epodetect
