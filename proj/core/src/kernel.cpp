#include "epodetect/kernel.hpp"

#include <cmath>

#include "epodetect/error.hpp"

namespace epodetect {

void validate(const KernelSpec& spec) {
  if (const auto* rbf = std::get_if<RbfKernel>(&spec); rbf && !(rbf->gamma > 0.0)) {
    throw DomainError("RBF gamma must be positive");
  }
  if (const auto* poly = std::get_if<PolynomialKernel>(&spec); poly && poly->degree < 1) {
    throw DomainError("polynomial degree must be >= 1");
  }
}

double kernel_eval(const KernelSpec& spec, std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DomainError("kernel arguments differ in dimension");
  if (const auto* rbf = std::get_if<RbfKernel>(&spec)) {
    double sq = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double d = u[i] - v[i];
      sq += d * d;
    }
    return std::exp(-rbf->gamma * sq);
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  if (const auto* poly = std::get_if<PolynomialKernel>(&spec)) {
    return std::pow(dot + poly->coef0, poly->degree);
  }
  return dot;
}

}  // namespace epodetect
