#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epodetect/ks.hpp"
#include "epodetect/profile.hpp"
#include "epodetect/summary.hpp"

namespace epodetect {

inline constexpr double kDefaultAlpha = 0.001;
inline constexpr double kDefaultCorrelationThreshold = 0.9;
inline constexpr std::size_t kDefaultTopK = 8;

struct ScreenOptions {
  double alpha = kDefaultAlpha;
  /// |r| above which the weaker of two selected parameters is discarded;
  /// nullopt disables the filter.
  std::optional<double> correlation_threshold = kDefaultCorrelationThreshold;
  PValueMethod p_value_method = AsymptoticPValue{};
};

/// Outcome of screening all 17 parameters at one altitude, control vs rhEPO.
struct ParameterScreen {
  Altitude altitude = Altitude::SeaLevel;
  double alpha = kDefaultAlpha;
  std::optional<double> correlation_threshold;
  std::size_t n_control = 0;
  std::size_t n_rhepo = 0;

  /// Indexed by Parameter; n_a is the control group, n_b the rhEPO group.
  std::array<KsResult, kParameterCount> results{};
  std::array<SummaryStats, kParameterCount> control_summary{};
  std::array<SummaryStats, kParameterCount> rhepo_summary{};

  /// Rejecting parameters by ascending p-value (ties: larger D, then
  /// table order).
  std::vector<Parameter> rejected;
  /// `rejected` minus the parameters dropped by the correlation filter.
  std::vector<Parameter> selected;
  std::vector<Parameter> discarded;

  const KsResult& result(Parameter p) const { return results[index_of(p)]; }

  /// First k of `selected`.
  std::vector<Parameter> top(std::size_t k) const;
};

/// Values of one parameter for the given altitude and label, in cohort order.
std::vector<double> parameter_values(const Cohort& cohort, Altitude altitude, Label label,
                                     Parameter p);

/// Runs the K-S test per parameter. The cohort must be imputed and contain
/// both labels at `altitude`; otherwise throws DomainError.
ParameterScreen screen_parameters(const Cohort& cohort, Altitude altitude,
                                  const ScreenOptions& options = {});

/// Greedy correlation pruning. `selected` is taken to be ordered by ascending
/// p-value; a parameter is dropped when |r| with an already kept one exceeds
/// `threshold`, so of each correlated pair the one with the larger p-value
/// goes. Correlations use all samples at `altitude`.
std::vector<Parameter> correlation_filter(const Cohort& cohort, Altitude altitude,
                                          std::span<const Parameter> selected,
                                          double threshold);

/// {"altitude", "alpha", "parameters": [{name, d, p, critical, reject}], "selected", ...}
std::string screen_to_json(const ParameterScreen& screen, std::size_t top_k);

/// One row per parameter, laid out like the published statistics tables
/// (rhEPO block, control block, then the test result).
void write_screen_csv(std::ostream& out, const ParameterScreen& screen);

}  // namespace epodetect
