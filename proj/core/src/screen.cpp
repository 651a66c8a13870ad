#include "epodetect/screen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "epodetect/error.hpp"
#include "epodetect/format.hpp"

namespace epodetect {

std::vector<Parameter> ParameterScreen::top(std::size_t k) const {
  std::vector<Parameter> out(selected.begin(),
                             selected.begin() + static_cast<std::ptrdiff_t>(std::min(k, selected.size())));
  return out;
}

std::vector<double> parameter_values(const Cohort& cohort, Altitude altitude, Label label,
                                     Parameter p) {
  std::vector<double> values;
  for (const Sample& s : cohort.samples()) {
    if (s.altitude != altitude || s.label != label) continue;
    const auto v = s.profile.get(p);
    if (!v) {
      throw DomainError("sample (" + s.participant_id + ", week " + std::to_string(s.week) +
                        ") is missing " + std::string(display_name(p)) +
                        "; impute the cohort before screening");
    }
    values.push_back(*v);
  }
  return values;
}

ParameterScreen screen_parameters(const Cohort& cohort, Altitude altitude,
                                  const ScreenOptions& options) {
  const SampleCounts counts = cohort.counts(altitude);
  if (counts.control == 0 || counts.rhepo == 0) {
    throw DomainError("screening at altitude '" + std::string(to_string(altitude)) +
                      "' needs both control and rhEPO samples (found " +
                      std::to_string(counts.control) + " control, " +
                      std::to_string(counts.rhepo) + " rhEPO)");
  }

  ParameterScreen screen;
  screen.altitude = altitude;
  screen.alpha = options.alpha;
  screen.correlation_threshold = options.correlation_threshold;
  screen.n_control = counts.control;
  screen.n_rhepo = counts.rhepo;

  for (Parameter p : all_parameters()) {
    const auto control = parameter_values(cohort, altitude, Label::Control, p);
    const auto rhepo = parameter_values(cohort, altitude, Label::RhEpo, p);
    screen.results[index_of(p)] = ks_test(control, rhepo, options.alpha, options.p_value_method);
    screen.control_summary[index_of(p)] = summarize(control);
    screen.rhepo_summary[index_of(p)] = summarize(rhepo);
    if (screen.results[index_of(p)].reject) screen.rejected.push_back(p);
  }

  std::stable_sort(screen.rejected.begin(), screen.rejected.end(), [&](Parameter x, Parameter y) {
    const KsResult& a = screen.result(x);
    const KsResult& b = screen.result(y);
    if (a.p_value != b.p_value) return a.p_value < b.p_value;
    if (a.d_statistic != b.d_statistic) return a.d_statistic > b.d_statistic;
    return index_of(x) < index_of(y);
  });

  if (options.correlation_threshold && screen.rejected.size() > 1) {
    screen.selected =
        correlation_filter(cohort, altitude, screen.rejected, *options.correlation_threshold);
  } else {
    screen.selected = screen.rejected;
  }
  for (Parameter p : screen.rejected) {
    if (std::find(screen.selected.begin(), screen.selected.end(), p) == screen.selected.end()) {
      screen.discarded.push_back(p);
    }
  }
  return screen;
}

std::vector<Parameter> correlation_filter(const Cohort& cohort, Altitude altitude,
                                          std::span<const Parameter> selected,
                                          double threshold) {
  const auto rows = cohort.at(altitude);
  if (rows.size() < 2) throw DomainError("correlation filter needs at least two samples");

  std::vector<std::vector<double>> columns;
  columns.reserve(selected.size());
  for (Parameter p : selected) {
    auto& col = columns.emplace_back();
    col.reserve(rows.size());
    for (const Sample* s : rows) {
      const auto v = s->profile.get(p);
      if (!v) throw DomainError("correlation filter needs an imputed cohort");
      col.push_back(*v);
    }
  }

  std::vector<Parameter> kept;
  std::vector<std::size_t> kept_columns;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const bool redundant = std::any_of(kept_columns.begin(), kept_columns.end(), [&](std::size_t j) {
      return std::abs(pearson(columns[i], columns[j])) > threshold;
    });
    if (!redundant) {
      kept.push_back(selected[i]);
      kept_columns.push_back(i);
    }
  }
  return kept;
}

namespace {

nlohmann::ordered_json names(std::span<const Parameter> params) {
  auto arr = nlohmann::ordered_json::array();
  for (Parameter p : params) arr.push_back(std::string(display_name(p)));
  return arr;
}

}  // namespace

std::string screen_to_json(const ParameterScreen& screen, std::size_t top_k) {
  nlohmann::ordered_json j;
  j["altitude"] = std::string(to_string(screen.altitude));
  j["alpha"] = screen.alpha;
  j["n_control"] = screen.n_control;
  j["n_rhepo"] = screen.n_rhepo;
  if (screen.correlation_threshold) {
    j["correlation_threshold"] = *screen.correlation_threshold;
  } else {
    j["correlation_threshold"] = nullptr;
  }
  auto params = nlohmann::ordered_json::array();
  for (Parameter p : all_parameters()) {
    const KsResult& r = screen.result(p);
    nlohmann::ordered_json e;
    e["name"] = std::string(display_name(p));
    e["d"] = r.d_statistic;
    e["p"] = r.p_value;
    e["critical"] = r.critical_value;
    e["reject"] = r.reject;
    params.push_back(std::move(e));
  }
  j["parameters"] = std::move(params);
  j["rejected"] = names(screen.rejected);
  j["discarded_correlated"] = names(screen.discarded);
  j["selected"] = names(screen.selected);
  j["top_k"] = top_k;
  j["features"] = names(screen.top(top_k));
  return j.dump(2) + "\n";
}

void write_screen_csv(std::ostream& out, const ParameterScreen& screen) {
  out << "parameter";
  for (const char* group : {"rhepo", "control"}) {
    for (const char* stat : {"mean", "std", "min", "iq1", "median", "iq3", "max"}) {
      out << ',' << group << '_' << stat;
    }
  }
  out << ",d,p_value,critical,reject\n";
  for (Parameter p : all_parameters()) {
    out << display_name(p);
    for (const SummaryStats* s : {&screen.rhepo_summary[index_of(p)],
                                  &screen.control_summary[index_of(p)]}) {
      for (double v : {s->mean, s->std, s->min, s->iq1, s->median, s->iq3, s->max}) {
        out << ',' << format_double(v);
      }
    }
    const KsResult& r = screen.result(p);
    out << ',' << format_double(r.d_statistic) << ',' << format_double(r.p_value) << ','
        << format_double(r.critical_value) << ',' << (r.reject ? "true" : "false") << '\n';
  }
}

}  // namespace epodetect
