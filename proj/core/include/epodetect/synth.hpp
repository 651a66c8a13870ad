#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "epodetect/profile.hpp"
#include "epodetect/random.hpp"
#include "epodetect/table_spec.hpp"

namespace epodetect {

/// Normal(mu, sigma) restricted to [lo, hi].
struct TruncatedNormal {
  double mu;
  double sigma;
  double lo;
  double hi;

  /// Rejection sampling from the untruncated normal.
  double sample(Rng& rng) const;
};

struct Moments {
  double mean;
  double std;
};

Moments truncated_moments(const TruncatedNormal& dist);

/// Finds mu and sigma so that the truncated distribution on [lo, hi] has the
/// requested mean and standard deviation. When the spread is out of reach the
/// mean is still matched at the widest spread found; when the mean is out of
/// reach too (or std is 0) the result is (mean, std) itself.
TruncatedNormal calibrate_truncated_normal(double mean, double std, double lo, double hi);

struct CohortSpec {
  Altitude altitude = Altitude::SeaLevel;
  std::size_t n_participants = 35;
  /// Share of participants in the rhEPO arm; the first round(n * fraction)
  /// participants are assigned to it.
  double rhepo_fraction = 25.0 / 35.0;
  /// Control visits dropped after generation, so the per-label sample counts
  /// can match an observed study.
  std::size_t skipped_control_visits = 14;
  double missing_rate = 0.0;
  std::uint64_t seed = 42;
  /// Follow-up weeks over which rhEPO-arm values return linearly to control.
  int washout_weeks = 2;
  /// Draw every sample from the control distributions (labels unchanged).
  bool label_blind = false;

  friend bool operator==(const CohortSpec&, const CohortSpec&) = default;
};

/// Study defaults: 35 sea-level participants (25 rhEPO) yielding 100 rhEPO and
/// 306 control samples; 39 high-altitude participants (12 rhEPO) yielding 48
/// and 410.
CohortSpec default_cohort_spec(Altitude altitude);

std::size_t rhepo_participants(const CohortSpec& spec);

/// Throws DomainError for invalid specs.
void validate(const CohortSpec& spec);

/// Weekly samples (weeks 1-12) for every participant. Samples are labelled
/// rhEPO iff the participant is in the rhEPO arm and the week is an
/// intervention week. rhEPO-arm participants draw from the rhEPO column during
/// intervention and wash out linearly over the first two follow-up weeks.
/// LFR, MFR and HFR are renormalised to sum to 100, IRF = MFR + HFR and
/// RET# = RET% * RBC / 100. Pure function of (spec, dist).
Cohort generate_cohort(const CohortSpec& spec, const ParameterDistSpec& dist);

/// Generates with the built-in statistics for spec.altitude.
Cohort generate_cohort(const CohortSpec& spec);

/// Blanks each measured cell independently with probability `rate`.
Cohort inject_missingness(const Cohort& cohort, double rate, std::uint64_t seed);

/// Sidecar recording the generator spec.
std::string cohort_spec_to_json(const CohortSpec& spec);
/// Throws ParseError on malformed input.
CohortSpec cohort_spec_from_json(std::string_view text);

}  // namespace epodetect
