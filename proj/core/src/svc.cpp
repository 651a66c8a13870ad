#include "epodetect/svc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epodetect/error.hpp"

namespace epodetect {
namespace {

constexpr double kTau = 1e-12;
constexpr double kSupportThreshold = 1e-12;

}  // namespace

SvcModel fit_svc(const FeatureMatrix& data, const SvcParams& params) {
  if (!data.has_both_classes()) throw DomainError("SVC needs both classes in the training data");
  if (!(params.c > 0.0)) throw DomainError("SVC box constraint C must be positive");
  if (!(params.tol > 0.0)) throw DomainError("SVC tolerance must be positive");
  validate(params.kernel);

  const std::size_t n = data.rows();
  const double c = params.c;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = data.label(i) == 1 ? 1.0 : -1.0;

  // Q_ij = y_i y_j K(x_i, x_j)
  std::vector<double> q(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = y[i] * y[j] * kernel_eval(params.kernel, data.row(i), data.row(j));
      q[i * n + j] = v;
      q[j * n + i] = v;
    }
  }

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 a'Qa - e'a
  auto in_up = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
  };
  auto in_low = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c);
  };

  SvcModel model;
  model.n_features = data.cols();
  model.kernel = params.kernel;
  model.c = c;

  std::size_t iter = 0;
  for (; iter < params.max_iter; ++iter) {
    double g_max = -std::numeric_limits<double>::infinity();
    double g_min = std::numeric_limits<double>::infinity();
    std::size_t i = n, j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t) && v > g_max) {
        g_max = v;
        i = t;
      }
      if (in_low(t) && v < g_min) {
        g_min = v;
        j = t;
      }
    }
    if (i == n || j == n || g_max - g_min < params.tol) {
      model.converged = true;
      break;
    }

    const double* qi = &q[i * n];
    const double* qj = &q[j * n];
    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (y[i] != y[j]) {
      double quad = qi[i] + qj[j] + 2.0 * qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = qi[i] + qj[j] - 2.0 * qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) grad[t] += qi[t] * di + qj[t] * dj;
  }
  model.iterations = iter;

  // Offset: average over free vectors, else midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      free_sum += yg;
    }
  }
  const double rho = n_free > 0 ? free_sum / static_cast<double>(n_free) : 0.5 * (ub + lb);
  model.bias = -rho;

  for (std::size_t t = 0; t < n; ++t) {
    if (std::abs(alpha[t]) <= kSupportThreshold) continue;
    const auto r = data.row(t);
    model.support_vectors.insert(model.support_vectors.end(), r.begin(), r.end());
    model.dual_coefs.push_back(alpha[t] * y[t]);
  }
  return model;
}

double svc_decision(const SvcModel& model, std::span<const double> x) {
  if (x.size() != model.n_features) throw DomainError("SVC input dimension mismatch");
  double s = model.bias;
  for (std::size_t i = 0; i < model.n_support(); ++i) {
    s += model.dual_coefs[i] * kernel_eval(model.kernel, model.support_vector(i), x);
  }
  return s;
}

}  // namespace epodetect
