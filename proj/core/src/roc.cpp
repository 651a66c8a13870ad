#include "epodetect/roc.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>

#include "epodetect/error.hpp"
#include "epodetect/format.hpp"

namespace epodetect {

RocCurve roc_curve(std::span<const int> labels, std::span<const double> scores) {
  if (labels.size() != scores.size()) throw DomainError("labels and scores differ in length");
  const auto n_pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw DomainError("ROC needs both classes");

  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::uint64_t tp = 0, fp = 0;
  std::uint64_t twice_area = 0;  // sum of (dfp) * (tp_prev + tp)
  std::size_t i = 0;
  while (i < order.size()) {
    const double s = scores[order[i]];
    const std::uint64_t tp_prev = tp, fp_prev = fp;
    while (i < order.size() && scores[order[i]] == s) {
      (labels[order[i]] == 1 ? tp : fp)++;
      ++i;
    }
    twice_area += (fp - fp_prev) * (tp + tp_prev);
    curve.points.push_back({s, static_cast<double>(fp) / static_cast<double>(n_neg),
                            static_cast<double>(tp) / static_cast<double>(n_pos)});
  }
  curve.auc = static_cast<double>(twice_area) /
              (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
  return curve;
}

RocPoint youden_point(const RocCurve& curve) {
  if (curve.points.empty()) throw DomainError("empty ROC curve");
  RocPoint best = curve.points.front();
  for (const RocPoint& p : curve.points) {
    if (p.tpr - p.fpr > best.tpr - best.fpr) best = p;
  }
  return best;
}

void write_roc_csv(std::ostream& out, const RocCurve& curve) {
  out << "threshold,fpr,tpr\n";
  for (const RocPoint& p : curve.points) {
    out << format_double(p.threshold) << ',' << format_double(p.fpr) << ','
        << format_double(p.tpr) << '\n';
  }
}

}  // namespace epodetect
