#include "epodetect/feature_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "epodetect/error.hpp"

namespace epodetect {

FeatureMatrix::FeatureMatrix(std::vector<double> values, std::vector<int> labels,
                             std::vector<std::string> feature_names)
    : values_(std::move(values)), labels_(std::move(labels)), names_(std::move(feature_names)) {
  if (names_.empty()) throw DomainError("feature matrix needs at least one feature");
  if (values_.size() != labels_.size() * names_.size()) {
    throw DomainError("feature matrix shape mismatch");
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw DomainError("feature matrix contains non-finite values");
  }
  if (!std::all_of(labels_.begin(), labels_.end(), [](int y) { return y == 0 || y == 1; })) {
    throw DomainError("labels must be 0 or 1");
  }
}

std::size_t FeatureMatrix::positives() const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), 1));
}

bool FeatureMatrix::has_both_classes() const {
  const std::size_t pos = positives();
  return pos > 0 && pos < rows();
}

FeatureMatrix FeatureMatrix::subset(std::span<const std::size_t> indices) const {
  std::vector<double> values;
  values.reserve(indices.size() * cols());
  std::vector<int> labels;
  labels.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= rows()) throw DomainError("row index out of range");
    const auto r = row(i);
    values.insert(values.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
  }
  return FeatureMatrix(std::move(values), std::move(labels), names_);
}

FeatureMatrix make_feature_matrix(const Cohort& cohort, Altitude altitude,
                                  std::span<const Parameter> features) {
  std::vector<double> values;
  std::vector<int> labels;
  std::vector<std::string> names;
  for (Parameter p : features) names.emplace_back(display_name(p));
  for (const Sample& s : cohort.samples()) {
    if (s.altitude != altitude) continue;
    for (Parameter p : features) {
      const auto v = s.profile.get(p);
      if (!v) {
        throw DomainError("sample (" + s.participant_id + ", week " + std::to_string(s.week) +
                          ") is missing " + std::string(display_name(p)));
      }
      values.push_back(*v);
    }
    labels.push_back(s.label == Label::RhEpo ? 1 : 0);
  }
  return FeatureMatrix(std::move(values), std::move(labels), std::move(names));
}

}  // namespace epodetect
