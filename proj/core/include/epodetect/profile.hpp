#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace epodetect {

/// The 17 haematological parameters, in the order used by every table,
/// report and CSV column. The first 16 are measured; OFF-HR is derived.
enum class Parameter : std::size_t {
  Hb,        // g/dL
  Hct,       // %
  RetCount,  // 10^12/L  (RET#)
  RetPct,    // %        (RET%)
  RetHb,     // pg
  Mcv,       // fL
  Mch,       // pg
  Mchc,      // g/dL
  Rbc,       // 10^12/L
  RdwSd,     // fL
  RdwCv,     // %
  Wbc,       // 10^9/L
  Irf,       // %
  Lfr,       // %
  Mfr,       // %
  Hfr,       // %
  OffHr,     // dimensionless
};

inline constexpr std::size_t kParameterCount = 17;
inline constexpr std::size_t kMeasuredCount = 16;

constexpr std::size_t index_of(Parameter p) noexcept {
  return static_cast<std::size_t>(p);
}

const std::array<Parameter, kParameterCount>& all_parameters() noexcept;
const std::array<Parameter, kMeasuredCount>& measured_parameters() noexcept;

/// Display name as used in the published tables ("RET%", "RDW-SD", ...).
std::string_view display_name(Parameter p) noexcept;
/// CSV column name ("RET_PCT", "RDW_SD", ...).
std::string_view column_name(Parameter p) noexcept;
std::string_view unit(Parameter p) noexcept;
bool is_percent(Parameter p) noexcept;

/// Accepts either the display name or the column name, case-insensitive.
std::optional<Parameter> parse_parameter(std::string_view name);

enum class Altitude { SeaLevel, HighAltitude };
enum class Period { Baseline, Intervention, FollowUp };
enum class Label { Control, RhEpo };

std::string_view to_string(Altitude a) noexcept;  // "sea" / "alt"
std::string_view to_string(Period p) noexcept;
std::string_view to_string(Label l) noexcept;     // "control" / "rhepo"
std::optional<Altitude> parse_altitude(std::string_view s);
std::optional<Label> parse_label(std::string_view s);

inline constexpr int kFirstWeek = 1;
inline constexpr int kLastWeek = 12;

/// Week 1-4 baseline, 5-8 intervention, 9-12 follow-up. Week 8 counts as
/// on-treatment. Throws DomainError outside 1..12.
Period derive_period(int week);

/// HB (g/L) - 60 * sqrt(RET%). Throws DomainError on negative input.
double compute_off_hr(double hb_g_per_l, double ret_pct);

/// One blood sample's haematological profile. Each measured parameter may be
/// missing; OFF-HR is always computed from HB and RET% and never stored.
class HaematologicalProfile {
 public:
  HaematologicalProfile() = default;

  /// Value of any of the 17 parameters; OFF-HR is derived on access.
  std::optional<double> get(Parameter p) const;
  /// Sets a measured parameter. Throws DomainError for OFF-HR.
  void set(Parameter p, std::optional<double> value);

  bool is_missing(Parameter p) const { return !get(p).has_value(); }
  bool complete() const;

  /// OFF-HR with HB converted from g/dL to g/L.
  std::optional<double> off_hr() const;

  friend bool operator==(const HaematologicalProfile&,
                         const HaematologicalProfile&) = default;

 private:
  std::array<std::optional<double>, kMeasuredCount> values_{};
};

/// Checks value invariants: finite, non-negative, percentages within
/// [0, 100], fluorescence fractions summing to 100 +/- 0.5 when all three
/// are present. Returns a message for the first violation.
std::optional<std::string> check_profile(const HaematologicalProfile& profile);

inline constexpr double kFractionSumTolerance = 0.5;

struct Sample {
  std::string participant_id;
  Altitude altitude = Altitude::SeaLevel;
  int week = kFirstWeek;
  Label label = Label::Control;
  HaematologicalProfile profile;

  Period period() const { return derive_period(week); }

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct SampleCounts {
  std::size_t control = 0;
  std::size_t rhepo = 0;
  std::size_t total() const { return control + rhepo; }
};

/// Immutable ordered collection of samples. Construction enforces that
/// (participant, altitude, week) is unique and that weeks lie in 1..12.
class Cohort {
 public:
  Cohort() = default;
  Cohort(std::vector<Sample> samples, std::string provenance);

  std::span<const Sample> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  const std::string& provenance() const noexcept { return provenance_; }

  SampleCounts counts(Altitude altitude) const;
  std::vector<std::string> participants(Altitude altitude) const;
  /// Samples at the given altitude, preserving order.
  std::vector<const Sample*> at(Altitude altitude) const;

  friend bool operator==(const Cohort&, const Cohort&) = default;

 private:
  std::vector<Sample> samples_;
  std::string provenance_;
};

}  // namespace epodetect
