#pragma once

#include <span>

namespace epodetect {

struct SummaryStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, n - 1 denominator
  double min = 0.0;
  double iq1 = 0.0;
  double median = 0.0;
  double iq3 = 0.0;
  double max = 0.0;
};

/// Quantile by linear interpolation between the order statistics around
/// position (n - 1) * q. `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double q);

/// Median; an even-sized set yields the mean of the two central values.
/// Throws DomainError on empty input.
double median(std::span<const double> values);

/// Throws DomainError on empty input.
SummaryStats summarize(std::span<const double> values);

/// Pearson correlation; 0 when either side has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace epodetect
