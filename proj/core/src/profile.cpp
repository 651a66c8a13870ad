#include "epodetect/profile.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <tuple>

#include "epodetect/error.hpp"

namespace epodetect {
namespace {

struct ParameterInfo {
  std::string_view display;
  std::string_view column;
  std::string_view unit;
  bool percent;
};

constexpr std::array<ParameterInfo, kParameterCount> kInfo{{
    {"HB", "HB", "g/dL", false},
    {"HCT", "HCT", "%", true},
    {"RET#", "RET_COUNT", "10^12/L", false},
    {"RET%", "RET_PCT", "%", true},
    {"RET-HB", "RET_HB", "pg", false},
    {"MCV", "MCV", "fL", false},
    {"MCH", "MCH", "pg", false},
    {"MCHC", "MCHC", "g/dL", false},
    {"RBC", "RBC", "10^12/L", false},
    {"RDW-SD", "RDW_SD", "fL", false},
    {"RDW-CV", "RDW_CV", "%", true},
    {"WBC", "WBC", "10^9/L", false},
    {"IRF", "IRF", "%", true},
    {"LFR", "LFR", "%", true},
    {"MFR", "MFR", "%", true},
    {"HFR", "HFR", "%", true},
    {"OFF-HR", "OFF_HR", "score", false},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

}  // namespace

const std::array<Parameter, kParameterCount>& all_parameters() noexcept {
  static const auto params = [] {
    std::array<Parameter, kParameterCount> out{};
    for (std::size_t i = 0; i < kParameterCount; ++i) {
      out[i] = static_cast<Parameter>(i);
    }
    return out;
  }();
  return params;
}

const std::array<Parameter, kMeasuredCount>& measured_parameters() noexcept {
  static const auto params = [] {
    std::array<Parameter, kMeasuredCount> out{};
    for (std::size_t i = 0; i < kMeasuredCount; ++i) {
      out[i] = static_cast<Parameter>(i);
    }
    return out;
  }();
  return params;
}

std::string_view display_name(Parameter p) noexcept { return kInfo[index_of(p)].display; }
std::string_view column_name(Parameter p) noexcept { return kInfo[index_of(p)].column; }
std::string_view unit(Parameter p) noexcept { return kInfo[index_of(p)].unit; }
bool is_percent(Parameter p) noexcept { return kInfo[index_of(p)].percent; }

std::optional<Parameter> parse_parameter(std::string_view name) {
  for (std::size_t i = 0; i < kParameterCount; ++i) {
    if (iequals(name, kInfo[i].display) || iequals(name, kInfo[i].column)) {
      return static_cast<Parameter>(i);
    }
  }
  return std::nullopt;
}

std::string_view to_string(Altitude a) noexcept {
  return a == Altitude::SeaLevel ? "sea" : "alt";
}

std::string_view to_string(Period p) noexcept {
  switch (p) {
    case Period::Baseline:
      return "baseline";
    case Period::Intervention:
      return "intervention";
    case Period::FollowUp:
      return "follow-up";
  }
  return "?";
}

std::string_view to_string(Label l) noexcept {
  return l == Label::Control ? "control" : "rhepo";
}

std::optional<Altitude> parse_altitude(std::string_view s) {
  if (iequals(s, "sea")) return Altitude::SeaLevel;
  if (iequals(s, "alt")) return Altitude::HighAltitude;
  return std::nullopt;
}

std::optional<Label> parse_label(std::string_view s) {
  if (iequals(s, "control")) return Label::Control;
  if (iequals(s, "rhepo")) return Label::RhEpo;
  return std::nullopt;
}

Period derive_period(int week) {
  if (week < kFirstWeek || week > kLastWeek) {
    throw DomainError("week " + std::to_string(week) + " outside 1..12");
  }
  if (week <= 4) return Period::Baseline;
  if (week <= 8) return Period::Intervention;
  return Period::FollowUp;
}

double compute_off_hr(double hb_g_per_l, double ret_pct) {
  if (!(hb_g_per_l >= 0.0) || !(ret_pct >= 0.0)) {
    throw DomainError("OFF-HR inputs must be non-negative");
  }
  return hb_g_per_l - 60.0 * std::sqrt(ret_pct);
}

std::optional<double> HaematologicalProfile::get(Parameter p) const {
  if (p == Parameter::OffHr) return off_hr();
  return values_[index_of(p)];
}

void HaematologicalProfile::set(Parameter p, std::optional<double> value) {
  if (p == Parameter::OffHr) {
    throw DomainError("OFF-HR is derived and cannot be set");
  }
  values_[index_of(p)] = value;
}

bool HaematologicalProfile::complete() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const auto& v) { return v.has_value(); });
}

std::optional<double> HaematologicalProfile::off_hr() const {
  const auto& hb = values_[index_of(Parameter::Hb)];
  const auto& ret = values_[index_of(Parameter::RetPct)];
  if (!hb || !ret || *hb < 0.0 || *ret < 0.0) return std::nullopt;
  return compute_off_hr(*hb * 10.0, *ret);
}

std::optional<std::string> check_profile(const HaematologicalProfile& profile) {
  for (Parameter p : measured_parameters()) {
    const auto v = profile.get(p);
    if (!v) continue;
    const std::string name(display_name(p));
    if (!std::isfinite(*v)) return name + " is not finite";
    if (*v < 0.0) return name + " is negative";
    if (is_percent(p) && *v > 100.0) return name + " exceeds 100%";
  }
  const auto lfr = profile.get(Parameter::Lfr);
  const auto mfr = profile.get(Parameter::Mfr);
  const auto hfr = profile.get(Parameter::Hfr);
  if (lfr && mfr && hfr &&
      std::abs(*lfr + *mfr + *hfr - 100.0) > kFractionSumTolerance) {
    return "LFR + MFR + HFR = " + std::to_string(*lfr + *mfr + *hfr) +
           ", expected 100";
  }
  return std::nullopt;
}

Cohort::Cohort(std::vector<Sample> samples, std::string provenance)
    : samples_(std::move(samples)), provenance_(std::move(provenance)) {
  std::set<std::tuple<std::string_view, Altitude, int>> keys;
  for (const Sample& s : samples_) {
    if (s.week < kFirstWeek || s.week > kLastWeek) {
      throw IntegrityError("participant " + s.participant_id + " has week " +
                           std::to_string(s.week) + " outside 1..12");
    }
    if (!keys.emplace(s.participant_id, s.altitude, s.week).second) {
      throw IntegrityError("duplicate sample (" + s.participant_id + ", " +
                           std::string(to_string(s.altitude)) + ", week " +
                           std::to_string(s.week) + ")");
    }
  }
}

SampleCounts Cohort::counts(Altitude altitude) const {
  SampleCounts c;
  for (const Sample& s : samples_) {
    if (s.altitude != altitude) continue;
    (s.label == Label::RhEpo ? c.rhepo : c.control)++;
  }
  return c;
}

std::vector<std::string> Cohort::participants(Altitude altitude) const {
  std::vector<std::string> ids;
  std::set<std::string_view> seen;
  for (const Sample& s : samples_) {
    if (s.altitude == altitude && seen.insert(s.participant_id).second) {
      ids.push_back(s.participant_id);
    }
  }
  return ids;
}

std::vector<const Sample*> Cohort::at(Altitude altitude) const {
  std::vector<const Sample*> out;
  for (const Sample& s : samples_) {
    if (s.altitude == altitude) out.push_back(&s);
  }
  return out;
}

}  // namespace epodetect
