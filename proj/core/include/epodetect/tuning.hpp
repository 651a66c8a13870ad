#pragma once

#include <cstddef>

#include "epodetect/hpo.hpp"
#include "epodetect/model.hpp"

namespace epodetect {

/// Default learner per kind. SVC uses an RBF kernel with gamma = 1 / n_features.
LearnerSpec default_learner(ModelKind kind, std::size_t n_features);

/// Search space explored by hyperparameter search for each learner.
SearchSpace default_search_space(ModelKind kind);

/// Default learner with every parameter present in `params` overridden.
LearnerSpec learner_from_params(ModelKind kind, const TrialParams& params, std::size_t n_features);

/// Hyperparameters of a learner as (name, value) pairs, for reports.
TrialParams learner_params(const LearnerSpec& spec);

}  // namespace epodetect
