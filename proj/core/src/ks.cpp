#include "epodetect/ks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "epodetect/error.hpp"
#include "epodetect/random.hpp"

namespace epodetect {
namespace {

double sorted_statistic(std::span<const double> a, std::span<const double> b) {
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() || j < b.size()) {
    double x;
    if (i == a.size()) {
      x = b[j];
    } else if (j == b.size()) {
      x = a[i];
    } else {
      x = std::min(a[i], b[j]);
    }
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw DomainError("empirical CDF of an empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("K-S statistic needs two non-empty samples");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sorted_statistic(sa, sb);
}

double ks_critical(double alpha, std::size_t n_a, std::size_t n_b) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (n_a == 0 || n_b == 0) throw DomainError("K-S critical value needs n_a, n_b >= 1");
  const auto a = static_cast<double>(n_a);
  const auto b = static_cast<double>(n_b);
  return std::sqrt(-std::log(alpha / 2.0) * (1.0 + b / a) / (2.0 * b));
}

double ks_pvalue(double d, std::size_t n_a, std::size_t n_b) {
  if (!(d >= 0.0 && d <= 1.0)) throw DomainError("K-S statistic must lie in [0, 1]");
  if (n_a == 0 || n_b == 0) throw DomainError("K-S p-value needs n_a, n_b >= 1");
  const auto a = static_cast<double>(n_a);
  const auto b = static_cast<double>(n_b);
  const double lambda = d * std::sqrt(a * b / (a + b));
  if (lambda == 0.0) return 1.0;

  constexpr double kTermFloor = 1e-12;
  double p = 0.0;
  if (lambda < 1.18) {
    // The alternating series converges slowly here; use the equivalent
    // theta-function form 1 - sqrt(2 pi)/lambda * sum exp(-(2k-1)^2 pi^2 / (8 lambda^2)).
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * c);
      sum += term;
      if (term < kTermFloor) break;
    }
    p = 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
  } else {
    double sign = 1.0;
    for (int k = 1; k < 1000; ++k) {
      const double term = std::exp(-2.0 * k * k * lambda * lambda);
      p += sign * term;
      if (term < kTermFloor) break;
      sign = -sign;
    }
    p *= 2.0;
  }
  return std::clamp(p, 0.0, 1.0);
}

double ks_permutation_pvalue(std::span<const double> a, std::span<const double> b,
                             std::size_t n_permutations, std::uint64_t seed) {
  if (n_permutations == 0) throw DomainError("permutation count must be positive");
  const double observed = ks_statistic(a, b);
  std::vector<double> pool(a.begin(), a.end());
  pool.insert(pool.end(), b.begin(), b.end());
  std::vector<double> left(a.size());
  std::vector<double> right(b.size());
  Rng rng(seed);
  // Statistics are differences of rationals; compare with a rounding allowance.
  constexpr double kTieAllowance = 1e-12;
  std::size_t at_least = 0;
  for (std::size_t r = 0; r < n_permutations; ++r) {
    rng.shuffle(std::span<double>(pool));
    std::copy(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(a.size()), left.begin());
    std::copy(pool.begin() + static_cast<std::ptrdiff_t>(a.size()), pool.end(), right.begin());
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    if (sorted_statistic(left, right) >= observed - kTieAllowance) ++at_least;
  }
  return static_cast<double>(at_least) / static_cast<double>(n_permutations);
}

KsResult ks_test(std::span<const double> a, std::span<const double> b, double alpha,
                 const PValueMethod& method) {
  KsResult r;
  r.alpha = alpha;
  r.n_a = a.size();
  r.n_b = b.size();
  r.d_statistic = ks_statistic(a, b);
  r.critical_value = ks_critical(alpha, r.n_a, r.n_b);
  r.reject = r.d_statistic > r.critical_value;
  if (const auto* perm = std::get_if<PermutationPValue>(&method)) {
    r.p_value = ks_permutation_pvalue(a, b, perm->n_permutations, perm->seed);
  } else {
    r.p_value = ks_pvalue(r.d_statistic, r.n_a, r.n_b);
  }
  return r;
}

}  // namespace epodetect
