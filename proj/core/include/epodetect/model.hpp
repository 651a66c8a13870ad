#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "epodetect/boosted.hpp"
#include "epodetect/feature_matrix.hpp"
#include "epodetect/forest.hpp"
#include "epodetect/svc.hpp"

namespace epodetect {

enum class ModelKind { Svc, Forest, Boosted };

std::string_view to_string(ModelKind kind) noexcept;  // "svc" / "rf" / "boost"
std::string_view display_name(ModelKind kind) noexcept;  // "SVC" / "RF" / "XGBoost"

using LearnerSpec = std::variant<SvcParams, ForestParams, BoostedParams>;
using Model = std::variant<SvcModel, ForestModel, BoostedModel>;

ModelKind kind_of(const LearnerSpec& spec) noexcept;
ModelKind kind_of(const Model& model) noexcept;

/// Fits the learner described by `spec`. SVC ignores the seed.
Model fit_model(const LearnerSpec& spec, const FeatureMatrix& data, std::uint64_t seed);

/// Uniform score: SVC decision value, forest / boosted probability.
double score(const Model& model, std::span<const double> x);

/// Score above which a sample is called positive: 0 for SVC, 0.5 otherwise.
double default_threshold(ModelKind kind) noexcept;

}  // namespace epodetect
