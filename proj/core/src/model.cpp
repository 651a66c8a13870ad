#include "epodetect/model.hpp"

namespace epodetect {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Svc:
      return "svc";
    case ModelKind::Forest:
      return "rf";
    case ModelKind::Boosted:
      return "boost";
  }
  return "?";
}

std::string_view display_name(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Svc:
      return "SVC";
    case ModelKind::Forest:
      return "RF";
    case ModelKind::Boosted:
      return "XGBoost";
  }
  return "?";
}

ModelKind kind_of(const LearnerSpec& spec) noexcept {
  return static_cast<ModelKind>(spec.index());
}

ModelKind kind_of(const Model& model) noexcept {
  return static_cast<ModelKind>(model.index());
}

Model fit_model(const LearnerSpec& spec, const FeatureMatrix& data, std::uint64_t seed) {
  return std::visit(
      Overloaded{
          [&](const SvcParams& p) -> Model { return fit_svc(data, p); },
          [&](const ForestParams& p) -> Model { return fit_forest(data, p, seed); },
          [&](const BoostedParams& p) -> Model { return fit_boosted(data, p, seed); },
      },
      spec);
}

double score(const Model& model, std::span<const double> x) {
  return std::visit(
      Overloaded{
          [&](const SvcModel& m) { return svc_decision(m, x); },
          [&](const ForestModel& m) { return forest_predict_proba(m, x); },
          [&](const BoostedModel& m) { return boosted_predict_proba(m, x); },
      },
      model);
}

double default_threshold(ModelKind kind) noexcept {
  return kind == ModelKind::Svc ? 0.0 : 0.5;
}

}  // namespace epodetect
