#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace epodetect {

struct RocPoint {
  double threshold;  // samples with score >= threshold are called positive
  double fpr;
  double tpr;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) at threshold +inf through (1,1)
  double auc = 0.0;
};

/// Sweeps thresholds over the distinct scores in descending order; tied
/// scores move the curve in a single step. The trapezoidal area is
/// accumulated in integer counts, so it equals the pairwise
/// (wins + ties/2) / (n_pos n_neg) statistic exactly. Throws DomainError on
/// single-class labels or length mismatch.
RocCurve roc_curve(std::span<const int> labels, std::span<const double> scores);

/// Threshold maximising Youden's J = tpr - fpr (first, i.e. highest, on ties).
RocPoint youden_point(const RocCurve& curve);

/// "threshold,fpr,tpr" rows.
void write_roc_csv(std::ostream& out, const RocCurve& curve);

}  // namespace epodetect
