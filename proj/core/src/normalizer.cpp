#include "epodetect/normalizer.hpp"

#include <cmath>

#include "epodetect/error.hpp"

namespace epodetect {

Normalizer::Normalizer(std::vector<double> means, std::vector<double> stds)
    : means_(std::move(means)), stds_(std::move(stds)) {
  if (means_.size() != stds_.size()) throw DomainError("normalizer mean/std size mismatch");
}

Normalizer Normalizer::fit(const FeatureMatrix& train) {
  if (train.rows() == 0) throw DomainError("normalizer needs at least one training row");
  const std::size_t d = train.cols();
  const auto n = static_cast<double>(train.rows());
  std::vector<double> mean(d, 0.0), sd(d, 0.0);
  for (std::size_t i = 0; i < train.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += train.at(i, j);
  }
  for (double& m : mean) m /= n;
  for (std::size_t i = 0; i < train.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double dev = train.at(i, j) - mean[j];
      sd[j] += dev * dev;
    }
  }
  for (double& s : sd) s = std::sqrt(s / n);
  return Normalizer(std::move(mean), std::move(sd));
}

std::vector<double> Normalizer::transform_row(std::span<const double> row) const {
  if (row.size() != means_.size()) throw DomainError("normalizer dimension mismatch");
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double centred = row[j] - means_[j];
    out[j] = stds_[j] > 0.0 ? centred / stds_[j] : centred;
  }
  return out;
}

FeatureMatrix Normalizer::transform(const FeatureMatrix& data) const {
  std::vector<double> values;
  values.reserve(data.values().size());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto r = transform_row(data.row(i));
    values.insert(values.end(), r.begin(), r.end());
  }
  return FeatureMatrix(std::move(values), std::vector<int>(data.labels().begin(), data.labels().end()),
                       data.feature_names());
}

}  // namespace epodetect
