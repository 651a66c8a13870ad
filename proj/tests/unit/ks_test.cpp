#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "epodetect/error.hpp"
#include "epodetect/ks.hpp"
#include "epodetect/random.hpp"
#include "epodetect/summary.hpp"

namespace epodetect {
namespace {

// Counts directly at every pooled value; O(n^2), no sorting.
double brute_force_ks(const std::vector<double>& a, const std::vector<double>& b) {
  auto cdf = [](const std::vector<double>& s, double x) {
    double c = 0;
    for (double v : s) c += v <= x ? 1 : 0;
    return c / static_cast<double>(s.size());
  };
  double best = 0.0;
  for (const auto* pool : {&a, &b}) {
    for (double x : *pool) best = std::max(best, std::abs(cdf(a, x) - cdf(b, x)));
  }
  return best;
}

std::vector<double> random_sample(Rng& rng, std::size_t n, int levels) {
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(rng.uniform_index(levels)) * 0.5;
  return v;
}

TEST(EmpiricalCdf, StepFunction) {
  const EmpiricalCdf f({3.0, 1.0, 2.0, 2.0});
  EXPECT_DOUBLE_EQ(f(0.5), 0.0);
  EXPECT_DOUBLE_EQ(f(1.0), 0.25);
  EXPECT_DOUBLE_EQ(f(2.0), 0.75);
  EXPECT_DOUBLE_EQ(f(10.0), 1.0);
  EXPECT_TRUE(std::is_sorted(f.sorted_values().begin(), f.sorted_values().end()));
  EXPECT_THROW(EmpiricalCdf({}), DomainError);
}

TEST(KsStatistic, KnownValues) {
  const std::vector<double> a{1, 2, 3};
  EXPECT_DOUBLE_EQ(ks_statistic(a, a), 0.0);
  EXPECT_DOUBLE_EQ(ks_statistic(a, std::vector<double>{10, 11, 12}), 1.0);
  EXPECT_DOUBLE_EQ(ks_statistic(std::vector<double>{1, 2, 3, 4}, std::vector<double>{2, 3, 4, 5}),
                   0.25);
}

TEST(KsStatistic, EmptyInputIsDomainError) {
  const std::vector<double> a{1.0};
  EXPECT_THROW(ks_statistic(a, std::vector<double>{}), DomainError);
  EXPECT_THROW(ks_statistic(std::vector<double>{}, a), DomainError);
}

TEST(KsStatistic, MatchesBruteForceWithTies) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_sample(rng, 1 + rng.uniform_index(30), 8);
    const auto b = random_sample(rng, 1 + rng.uniform_index(30), 8);
    EXPECT_EQ(ks_statistic(a, b), brute_force_ks(a, b));
  }
}

TEST(KsStatistic, SymmetricBoundedAndTransformInvariant) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_sample(rng, 1 + rng.uniform_index(20), 12);
    auto b = random_sample(rng, 1 + rng.uniform_index(20), 12);
    const double d = ks_statistic(a, b);
    EXPECT_EQ(d, ks_statistic(b, a));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
    auto ta = a, tb = b;
    for (double& x : ta) x = std::exp(x) + 3.0;
    for (double& x : tb) x = std::exp(x) + 3.0;
    EXPECT_EQ(ks_statistic(ta, tb), d);
    for (double& x : a) x += 100.0;
    for (double& x : b) x += 100.0;
    EXPECT_EQ(ks_statistic(a, b), d);
  }
}

TEST(KsCritical, ClosedForm) {
  EXPECT_NEAR(ks_critical(0.001, 100, 100), 0.27569734238004695, 1e-12);
  EXPECT_LT(ks_critical(0.001, 100, 609), ks_critical(0.001, 100, 100));
  EXPECT_EQ(ks_critical(0.05, 40, 40), ks_critical(0.05, 40, 40));
  EXPECT_THROW(ks_critical(0.0, 10, 10), DomainError);
  EXPECT_THROW(ks_critical(1.0, 10, 10), DomainError);
  EXPECT_THROW(ks_critical(0.05, 0, 10), DomainError);
}

TEST(KsPValue, KolmogorovDistributionReference) {
  // Kolmogorov survival function Q(lambda) at n_a = n_b = 200 (lambda = 10 d).
  const std::vector<std::pair<double, double>> reference{
      {0.3, 0.9999906941986655}, {0.5, 0.9639452436648751}, {1.0, 0.26999967167735456},
      {1.18, 0.1234538094297657}, {1.5, 0.022217962616525127}, {2.0, 0.0006709252557796953}};
  for (const auto& [lambda, q] : reference) {
    EXPECT_NEAR(ks_pvalue(lambda / 10.0, 200, 200), q, 1e-10) << "lambda " << lambda;
  }
}

TEST(KsPValue, Extremes) {
  EXPECT_DOUBLE_EQ(ks_pvalue(0.0, 100, 100), 1.0);
  EXPECT_LT(ks_pvalue(1.0, 100, 100), 1e-8);
  EXPECT_GE(ks_pvalue(1.0, 100, 100), 0.0);
  EXPECT_THROW(ks_pvalue(1.5, 10, 10), DomainError);
}

TEST(KsPValue, MonotoneDecreasingInD) {
  double previous = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double p = ks_pvalue(i / 100.0, 50, 70);
    EXPECT_LE(p, previous);
    previous = p;
  }
}

TEST(KsPValue, PermutationAgreesWithAsymptotic) {
  Rng rng(2024);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> a(50), b(50);
    for (double& x : a) x = rng.normal();
    for (double& x : b) x = rng.normal();
    const double asymptotic = ks_pvalue(ks_statistic(a, b), 50, 50);
    const double permuted = ks_permutation_pvalue(a, b, 10'000, 5 + trial);
    EXPECT_NEAR(asymptotic, permuted, 0.03);
  }
}

TEST(KsPValue, PermutationIsSeeded) {
  const std::vector<double> a{1, 2, 3, 4, 5}, b{3, 4, 5, 6, 7, 8};
  EXPECT_EQ(ks_permutation_pvalue(a, b, 500, 9), ks_permutation_pvalue(a, b, 500, 9));
  EXPECT_DOUBLE_EQ(ks_permutation_pvalue(a, a, 200, 1), 1.0);
}

TEST(KsTest, RejectIffAboveCritical) {
  const std::vector<double> a{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<double> b{11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
  const KsResult r = ks_test(a, b, 0.001);
  EXPECT_DOUBLE_EQ(r.d_statistic, 1.0);
  EXPECT_EQ(r.reject, r.d_statistic > r.critical_value);
  EXPECT_EQ(r.n_a, 10u);
  const KsResult same = ks_test(a, a, 0.001);
  EXPECT_FALSE(same.reject);
  const KsResult perm = ks_test(a, b, 0.001, PermutationPValue{3, 200});
  EXPECT_LT(perm.p_value, 0.01);
}

TEST(Summary, QuartilesByLinearInterpolation) {
  const std::vector<double> v{5, 1, 4, 2, 3};
  const SummaryStats s = summarize(v);
  EXPECT_DOUBLE_EQ(s.median, 3.0);
  EXPECT_DOUBLE_EQ(s.iq1, 2.0);
  EXPECT_DOUBLE_EQ(s.iq3, 4.0);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.std, std::sqrt(2.5));
  const std::vector<double> four{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(summarize(four).iq1, 1.75);
  EXPECT_DOUBLE_EQ(median(four), 2.5);
}

TEST(Summary, Singleton) {
  const SummaryStats s = summarize(std::vector<double>{7.0});
  for (double x : {s.mean, s.min, s.iq1, s.median, s.iq3, s.max}) EXPECT_DOUBLE_EQ(x, 7.0);
  EXPECT_DOUBLE_EQ(s.std, 0.0);
  EXPECT_THROW(summarize(std::vector<double>{}), DomainError);
}

TEST(Summary, ReversalInvariantAndOrdered) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(1 + rng.uniform_index(40));
    for (double& x : v) x = rng.normal() * 10.0;
    std::vector<double> r(v.rbegin(), v.rend());
    const SummaryStats a = summarize(v), b = summarize(r);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std, b.std);
    EXPECT_EQ(a.median, b.median);
    EXPECT_LE(a.min, a.iq1);
    EXPECT_LE(a.iq1, a.median);
    EXPECT_LE(a.median, a.iq3);
    EXPECT_LE(a.iq3, a.max);
  }
}

TEST(Summary, Pearson) {
  const std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8}, z{4, 3, 2, 1}, c{5, 5, 5, 5};
  EXPECT_NEAR(pearson(x, y), 1.0, 1e-15);
  EXPECT_NEAR(pearson(x, z), -1.0, 1e-15);
  EXPECT_EQ(pearson(x, c), 0.0);
}

}  // namespace
}  // namespace epodetect
