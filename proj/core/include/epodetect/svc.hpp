#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "epodetect/feature_matrix.hpp"
#include "epodetect/kernel.hpp"

namespace epodetect {

struct SvcParams {
  double c = 1.0;
  KernelSpec kernel = RbfKernel{};
  double tol = 1e-3;           // stop when the maximal KKT violation is below this
  std::size_t max_iter = 100'000;  // pair updates
};

/// Soft-margin kernel SVM in dual form. Decision value is
/// sum_i dual_coefs[i] * K(sv_i, x) + bias, positive class iff > 0.
struct SvcModel {
  std::size_t n_features = 0;
  std::vector<double> support_vectors;  // row-major, dual_coefs.size() rows
  std::vector<double> dual_coefs;       // alpha_i * y_i, y in {-1, +1}
  double bias = 0.0;
  KernelSpec kernel = RbfKernel{};
  double c = 1.0;
  bool converged = false;
  std::size_t iterations = 0;

  std::size_t n_support() const noexcept { return dual_coefs.size(); }
  std::span<const double> support_vector(std::size_t i) const {
    return {support_vectors.data() + i * n_features, n_features};
  }
};

/// Solves the dual by sequential minimal optimisation with the maximal
/// violating pair (lowest index wins ties). Features should already be
/// normalised. Throws DomainError on single-class data or invalid params;
/// a run that hits max_iter returns with converged == false.
SvcModel fit_svc(const FeatureMatrix& data, const SvcParams& params);

double svc_decision(const SvcModel& model, std::span<const double> x);

}  // namespace epodetect
