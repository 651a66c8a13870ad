#include "epodetect/impute.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epodetect/error.hpp"
#include "epodetect/summary.hpp"

namespace epodetect {
namespace {

using GroupKey = std::pair<std::string, Altitude>;

std::optional<double> median_or_none(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  return median(values);
}

// Rescales the imputed members of the LFR/MFR/HFR triple so the three sum
// to 100. `imputed[i]` marks which of the three were filled.
void complete_fractions(HaematologicalProfile& profile, const std::array<bool, 3>& imputed) {
  constexpr std::array<Parameter, 3> kTriple{Parameter::Lfr, Parameter::Mfr, Parameter::Hfr};
  double measured_sum = 0.0;
  double imputed_sum = 0.0;
  int n_imputed = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double v = *profile.get(kTriple[i]);
    if (imputed[i]) {
      imputed_sum += v;
      ++n_imputed;
    } else {
      measured_sum += v;
    }
  }
  if (n_imputed == 0) return;
  const double remaining = std::max(0.0, 100.0 - measured_sum);
  for (std::size_t i = 0; i < 3; ++i) {
    if (!imputed[i]) continue;
    const double v = *profile.get(kTriple[i]);
    const double filled = imputed_sum > 0.0 ? v * remaining / imputed_sum
                                            : remaining / n_imputed;
    profile.set(kTriple[i], filled);
  }
}

}  // namespace

Cohort impute_missing(const Cohort& cohort) {
  const auto samples = cohort.samples();

  // Per-parameter pools at three levels.
  std::array<std::map<GroupKey, std::vector<double>>, kMeasuredCount> by_group;
  std::array<std::map<Altitude, std::vector<double>>, kMeasuredCount> by_altitude;
  std::array<std::vector<double>, kMeasuredCount> overall;
  std::array<bool, kMeasuredCount> any_missing{};

  for (const Sample& s : samples) {
    for (Parameter p : measured_parameters()) {
      const std::size_t k = index_of(p);
      if (auto v = s.profile.get(p)) {
        by_group[k][{s.participant_id, s.altitude}].push_back(*v);
        by_altitude[k][s.altitude].push_back(*v);
        overall[k].push_back(*v);
      } else {
        any_missing[k] = true;
      }
    }
  }

  std::array<std::map<GroupKey, double>, kMeasuredCount> group_median;
  std::array<std::map<Altitude, double>, kMeasuredCount> altitude_median;
  std::array<std::optional<double>, kMeasuredCount> overall_median;
  for (std::size_t k = 0; k < kMeasuredCount; ++k) {
    if (!any_missing[k]) continue;
    if (overall[k].empty()) {
      throw ImputationError("parameter " +
                            std::string(display_name(static_cast<Parameter>(k))) +
                            " is missing in every sample; cannot impute");
    }
    for (const auto& [key, values] : by_group[k]) group_median[k][key] = median(values);
    for (const auto& [alt, values] : by_altitude[k]) altitude_median[k][alt] = median(values);
    overall_median[k] = median_or_none(overall[k]);
  }

  std::vector<Sample> out(samples.begin(), samples.end());
  for (Sample& s : out) {
    std::array<bool, 3> fraction_imputed{};
    for (Parameter p : measured_parameters()) {
      if (!s.profile.is_missing(p)) continue;
      const std::size_t k = index_of(p);
      double fill = *overall_median[k];
      if (auto g = group_median[k].find({s.participant_id, s.altitude});
          g != group_median[k].end()) {
        fill = g->second;
      } else if (auto a = altitude_median[k].find(s.altitude); a != altitude_median[k].end()) {
        fill = a->second;
      }
      s.profile.set(p, fill);
      if (p == Parameter::Lfr) fraction_imputed[0] = true;
      if (p == Parameter::Mfr) fraction_imputed[1] = true;
      if (p == Parameter::Hfr) fraction_imputed[2] = true;
    }
    complete_fractions(s.profile, fraction_imputed);
  }
  return Cohort(std::move(out), cohort.provenance());
}

}  // namespace epodetect
