#pragma once

#include <span>
#include <variant>

namespace epodetect {

struct LinearKernel {
  friend bool operator==(const LinearKernel&, const LinearKernel&) = default;
};
struct RbfKernel {
  double gamma = 1.0;
  friend bool operator==(const RbfKernel&, const RbfKernel&) = default;
};
struct PolynomialKernel {
  int degree = 3;
  double coef0 = 1.0;
  friend bool operator==(const PolynomialKernel&, const PolynomialKernel&) = default;
};

using KernelSpec = std::variant<LinearKernel, RbfKernel, PolynomialKernel>;

/// Throws DomainError for gamma <= 0 or degree < 1.
void validate(const KernelSpec& spec);

/// Linear: u.v; RBF: exp(-gamma |u - v|^2); polynomial: (u.v + coef0)^degree.
/// Throws DomainError on dimension mismatch.
double kernel_eval(const KernelSpec& spec, std::span<const double> u, std::span<const double> v);

}  // namespace epodetect
