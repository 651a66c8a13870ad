#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace epodetect {

/// Right-continuous step function F(x) = #{v <= x} / n over a non-empty sample.
class EmpiricalCdf {
 public:
  /// Throws DomainError when `values` is empty.
  explicit EmpiricalCdf(std::vector<double> values);

  double operator()(double x) const;
  std::span<const double> sorted_values() const noexcept { return sorted_; }
  std::size_t size() const noexcept { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

/// Two-sample statistic sup_x |F_a(x) - F_b(x)|, evaluated exactly at every
/// distinct pooled value (ties are handled without jitter).
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Rejection threshold sqrt(-ln(alpha/2) * (1 + n_b/n_a) / (2 n_b)).
double ks_critical(double alpha, std::size_t n_a, std::size_t n_b);

/// Asymptotic Kolmogorov p-value Q(lambda), lambda = d * sqrt(n_a n_b / (n_a + n_b)).
double ks_pvalue(double d, std::size_t n_a, std::size_t n_b);

/// Fraction of label-shuffled replicates whose statistic is >= the observed one.
double ks_permutation_pvalue(std::span<const double> a, std::span<const double> b,
                             std::size_t n_permutations, std::uint64_t seed);

struct AsymptoticPValue {};
struct PermutationPValue {
  std::uint64_t seed = 42;
  std::size_t n_permutations = 10'000;
};
using PValueMethod = std::variant<AsymptoticPValue, PermutationPValue>;

struct KsResult {
  double d_statistic = 0.0;
  double p_value = 1.0;
  double critical_value = 0.0;
  double alpha = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  bool reject = false;  // d_statistic > critical_value
};

KsResult ks_test(std::span<const double> a, std::span<const double> b, double alpha,
                 const PValueMethod& method = AsymptoticPValue{});

}  // namespace epodetect
