#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "epodetect/error.hpp"
#include "epodetect/metrics.hpp"
#include "epodetect/random.hpp"
#include "epodetect/roc.hpp"

namespace epodetect {
namespace {

double pairwise_auc(const std::vector<int>& y, const std::vector<double>& s) {
  double wins = 0, pairs = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[i] != 1 || y[j] != 0) continue;
      pairs += 1;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

TEST(Metrics, ConfusionExample) {
  const MetricsReport m = metrics({50, 10, 0, 40});
  EXPECT_DOUBLE_EQ(m.accuracy, 0.9);
  EXPECT_DOUBLE_EQ(*m.sensitivity, 1.0);
  EXPECT_DOUBLE_EQ(*m.recall, 1.0);
  EXPECT_DOUBLE_EQ(*m.specificity, 0.8);
  EXPECT_DOUBLE_EQ(*m.precision, 50.0 / 60.0);
}

TEST(Metrics, BalancedOnes) {
  const MetricsReport m = metrics({1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(m.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(*m.f1, 0.5);
  EXPECT_DOUBLE_EQ(*m.f1_unscaled, 0.25);
}

TEST(Metrics, ZeroDenominatorsAreAbsent) {
  const MetricsReport m = metrics({0, 0, 0, 10});
  EXPECT_DOUBLE_EQ(m.accuracy, 1.0);
  EXPECT_FALSE(m.precision.has_value());
  EXPECT_FALSE(m.recall.has_value());
  EXPECT_FALSE(m.f1.has_value());
  EXPECT_DOUBLE_EQ(*m.specificity, 1.0);
  EXPECT_THROW(metrics({0, 0, 0, 0}), DomainError);
}

TEST(Metrics, F1ZeroIffPrecisionOrRecallZero) {
  const MetricsReport m = metrics({0, 3, 4, 5});
  EXPECT_DOUBLE_EQ(*m.precision, 0.0);
  EXPECT_FALSE(m.f1.has_value() && *m.f1 != 0.0);
  for (std::size_t tp = 1; tp < 5; ++tp) {
    const MetricsReport r = metrics({tp, 2, 3, 4});
    EXPECT_GT(*r.f1, 0.0);
    EXPECT_GE(r.accuracy, 0.0);
    EXPECT_LE(r.accuracy, 1.0);
  }
}

TEST(Metrics, BaselineConstant) {
  EXPECT_EQ(kSotaBaseline.sensitivity, 0.45);
  EXPECT_EQ(kSotaBaseline.specificity, 1.0);
  EXPECT_EQ(kSotaBaseline.auc, 0.84);
}

TEST(Metrics, ConfusionAtThreshold) {
  const std::vector<int> y{1, 1, 0, 0};
  const std::vector<double> s{0.9, 0.5, 0.5, 0.1};
  const ConfusionMatrix cm = confusion_at(y, s, 0.5);
  EXPECT_EQ(cm, (ConfusionMatrix{1, 0, 1, 2}));
}

TEST(Roc, PerfectAndConstantScores) {
  const std::vector<int> y{1, 1, 0, 0, 0};
  EXPECT_DOUBLE_EQ(roc_curve(y, std::vector<double>{5, 4, 3, 2, 1}).auc, 1.0);
  const RocCurve flat = roc_curve(y, std::vector<double>{1, 1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(flat.auc, 0.5);
  EXPECT_EQ(flat.points.size(), 2u);
}

TEST(Roc, EqualsPairwiseStatistic) {
  Rng rng(30);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(40);
    std::vector<int> y(n);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<int>(rng.uniform_index(2));
      s[i] = static_cast<double>(rng.uniform_index(6));
    }
    y[0] = 1;
    y[1] = 0;
    EXPECT_EQ(roc_curve(y, s).auc, pairwise_auc(y, s));
  }
}

TEST(Roc, MonotoneEndpointsAndTransformInvariant) {
  Rng rng(2);
  std::vector<int> y(30);
  std::vector<double> s(30);
  for (std::size_t i = 0; i < 30; ++i) {
    y[i] = i % 3 == 0 ? 1 : 0;
    s[i] = rng.normal() + y[i];
  }
  const RocCurve c = roc_curve(y, s);
  EXPECT_EQ(c.points.front().fpr, 0.0);
  EXPECT_EQ(c.points.front().tpr, 0.0);
  EXPECT_TRUE(std::isinf(c.points.front().threshold));
  EXPECT_EQ(c.points.back().fpr, 1.0);
  EXPECT_EQ(c.points.back().tpr, 1.0);
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    EXPECT_GE(c.points[i].fpr, c.points[i - 1].fpr);
    EXPECT_GE(c.points[i].tpr, c.points[i - 1].tpr);
  }
  std::vector<double> t(s);
  for (double& v : t) v = std::exp(2.0 * v) - 4.0;
  const RocCurve ct = roc_curve(y, t);
  ASSERT_EQ(ct.points.size(), c.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    EXPECT_EQ(ct.points[i].fpr, c.points[i].fpr);
    EXPECT_EQ(ct.points[i].tpr, c.points[i].tpr);
  }
  EXPECT_EQ(ct.auc, c.auc);
}

TEST(Roc, Errors) {
  EXPECT_THROW(roc_curve(std::vector<int>{1, 1}, std::vector<double>{0.1, 0.2}), DomainError);
  EXPECT_THROW(roc_curve(std::vector<int>{1, 0}, std::vector<double>{0.1}), DomainError);
}

TEST(Roc, YoudenAndCsv) {
  const std::vector<int> y{1, 1, 0, 0};
  const RocCurve c = roc_curve(y, std::vector<double>{0.9, 0.8, 0.3, 0.1});
  const RocPoint p = youden_point(c);
  EXPECT_DOUBLE_EQ(p.tpr, 1.0);
  EXPECT_DOUBLE_EQ(p.fpr, 0.0);
  EXPECT_DOUBLE_EQ(p.threshold, 0.8);
  std::ostringstream out;
  write_roc_csv(out, c);
  EXPECT_EQ(out.str().rfind("threshold,fpr,tpr\n", 0), 0u);
}

}  // namespace
}  // namespace epodetect
