#include "epodetect/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "epodetect/error.hpp"

namespace epodetect {
namespace {

constexpr std::size_t kMaxRejections = 1'000'000;
constexpr std::size_t kMaxFractionDraws = 100'000;

enum Stream : std::uint64_t { kParticipantStream = 0, kSkipStream = 1, kMissingStream = 2 };

constexpr std::array<Parameter, 11> kDrawn{
    Parameter::Hb,   Parameter::Hct,   Parameter::RetPct, Parameter::RetHb,
    Parameter::Mcv,  Parameter::Mch,   Parameter::Mchc,   Parameter::Rbc,
    Parameter::RdwSd, Parameter::RdwCv, Parameter::Wbc};

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }
double Phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

struct Calibrated {
  std::array<TruncatedNormal, kParameterCount> control;
  std::array<TruncatedNormal, kParameterCount> rhepo;
};

Calibrated calibrate(const ParameterDistSpec& dist) {
  Calibrated c{};
  for (Parameter p : all_parameters()) {
    const MarginalStats& r = dist.stats(p, Label::RhEpo);
    const MarginalStats& k = dist.stats(p, Label::Control);
    c.rhepo[index_of(p)] = calibrate_truncated_normal(r.mean, r.std, r.min, r.max);
    c.control[index_of(p)] = calibrate_truncated_normal(k.mean, k.std, k.min, k.max);
  }
  return c;
}

// Weight of the rhEPO column for a participant in the rhEPO arm.
double rhepo_weight(int week, int washout_weeks) {
  switch (derive_period(week)) {
    case Period::Baseline:
      return 0.0;
    case Period::Intervention:
      return 1.0;
    case Period::FollowUp:
      break;
  }
  const int since = week - 8;  // 1 for the first follow-up week
  if (since > washout_weeks) return 0.0;
  return static_cast<double>(washout_weeks + 1 - since) / (washout_weeks + 1);
}

TruncatedNormal blend(const TruncatedNormal& control, const TruncatedNormal& rhepo, double w) {
  if (w <= 0.0) return control;
  if (w >= 1.0) return rhepo;
  return {(1 - w) * control.mu + w * rhepo.mu, (1 - w) * control.sigma + w * rhepo.sigma,
          std::min(control.lo, rhepo.lo), std::max(control.hi, rhepo.hi)};
}

struct Bounds {
  double lo;
  double hi;
  bool contains(double v) const { return v >= lo && v <= hi; }
};

Bounds bounds_of(const TruncatedNormal& control, const TruncatedNormal& rhepo, double w) {
  const TruncatedNormal b = blend(control, rhepo, w);
  return {b.lo, b.hi};
}

HaematologicalProfile draw_profile(const Calibrated& cal, double w, Rng& rng) {
  auto dist = [&](Parameter p) {
    return blend(cal.control[index_of(p)], cal.rhepo[index_of(p)], w);
  };
  HaematologicalProfile prof;
  for (Parameter p : kDrawn) prof.set(p, dist(p).sample(rng));

  const TruncatedNormal lfr = dist(Parameter::Lfr);
  const TruncatedNormal mfr = dist(Parameter::Mfr);
  const TruncatedNormal hfr = dist(Parameter::Hfr);
  const Bounds irf = bounds_of(cal.control[index_of(Parameter::Irf)],
                               cal.rhepo[index_of(Parameter::Irf)], w);
  for (std::size_t attempt = 0;; ++attempt) {
    if (attempt == kMaxFractionDraws) {
      throw DomainError("fluorescence fractions cannot satisfy their bounds");
    }
    double l = lfr.sample(rng);
    double m = mfr.sample(rng);
    double h = hfr.sample(rng);
    const double scale = 100.0 / (l + m + h);
    l *= scale;
    m *= scale;
    h *= scale;
    // Store the fractions so that LFR + IRF is exactly 100 in floating point.
    const double sum_mh = m + h;
    l = 100.0 - sum_mh;
    if (!Bounds{lfr.lo, lfr.hi}.contains(l) || !Bounds{mfr.lo, mfr.hi}.contains(m) ||
        !Bounds{hfr.lo, hfr.hi}.contains(h) || !irf.contains(sum_mh)) {
      continue;
    }
    prof.set(Parameter::Lfr, l);
    prof.set(Parameter::Mfr, m);
    prof.set(Parameter::Hfr, h);
    prof.set(Parameter::Irf, sum_mh);
    break;
  }
  prof.set(Parameter::RetCount,
           *prof.get(Parameter::RetPct) * *prof.get(Parameter::Rbc) / 100.0);
  return prof;
}

std::string participant_id(std::size_t index) {
  std::string digits = std::to_string(index + 1);
  if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
  return "P" + digits;
}

}  // namespace

double TruncatedNormal::sample(Rng& rng) const {
  if (sigma == 0.0) return std::clamp(mu, lo, hi);
  for (std::size_t i = 0; i < kMaxRejections; ++i) {
    const double x = mu + sigma * rng.normal();
    if (x >= lo && x <= hi) return x;
  }
  throw DomainError("truncated normal rejection sampling did not terminate");
}

namespace {

// Mean and variance of a standard normal truncated to [a, b]. Reflects so the
// lower limit is never positive, which keeps Phi(b) - Phi(a) accurate in the
// upper tail.
std::pair<double, double> standard_truncated(double a, double b) {
  if (a > 0.0) {
    const auto [m, v] = standard_truncated(-b, -a);
    return {-m, v};
  }
  const double z = Phi(b) - Phi(a);
  if (!(z > 0.0)) return {std::nan(""), std::nan("")};
  const double r = (phi(a) - phi(b)) / z;
  const double var = 1.0 + (a * phi(a) - b * phi(b)) / z - r * r;
  return {r, std::max(var, 0.0)};
}

// Normal mass inside [lo, hi], i.e. the rejection sampler's acceptance rate.
double interval_mass(double mu, double sigma, double lo, double hi) {
  const double a = (lo - mu) / sigma;
  const double b = (hi - mu) / sigma;
  return a > 0.0 ? Phi(-a) - Phi(-b) : Phi(b) - Phi(a);
}

constexpr double kMinAcceptance = 1e-3;
constexpr double kTailSpan = 30.0;  // mu is searched within this many sigmas of the bounds
constexpr int kBisections = 120;

// Location whose truncation on [lo, hi] has the given mean; the truncated
// mean increases with mu.
std::optional<double> solve_location(double mean, double sigma, double lo, double hi) {
  double left = lo - kTailSpan * sigma;
  double right = hi + kTailSpan * sigma;
  auto mean_at = [&](double mu) { return truncated_moments({mu, sigma, lo, hi}).mean; };
  if (!(mean_at(left) <= mean && mean <= mean_at(right))) return std::nullopt;
  for (int i = 0; i < kBisections; ++i) {
    const double mid = 0.5 * (left + right);
    (mean_at(mid) < mean ? left : right) = mid;
  }
  return 0.5 * (left + right);
}

}  // namespace

Moments truncated_moments(const TruncatedNormal& d) {
  if (d.sigma <= 0.0) return {std::clamp(d.mu, d.lo, d.hi), 0.0};
  const auto [m, v] = standard_truncated((d.lo - d.mu) / d.sigma, (d.hi - d.mu) / d.sigma);
  return {d.mu + d.sigma * m, d.sigma * std::sqrt(v)};
}

TruncatedNormal calibrate_truncated_normal(double mean, double std, double lo, double hi) {
  if (!(lo <= mean && mean <= hi) || std < 0.0) {
    throw DomainError("invalid marginal: need lo <= mean <= hi and std >= 0");
  }
  const TruncatedNormal fallback{mean, std, lo, hi};
  if (std == 0.0 || lo == hi || mean == lo || mean == hi) return fallback;

  // With the mean pinned, the truncated spread grows with sigma.
  auto spread = [&](double sigma) -> std::optional<double> {
    const auto mu = solve_location(mean, sigma, lo, hi);
    if (!mu || interval_mass(*mu, sigma, lo, hi) < kMinAcceptance) return std::nullopt;
    return truncated_moments({*mu, sigma, lo, hi}).std;
  };
  // Widen a bracket around sigma = std until it straddles the target.
  double left = std;
  double right = std;
  for (int i = 0;; ++i) {
    const auto s = spread(left);
    if (!s || i == 60) return fallback;
    if (*s <= std) break;
    left /= 1.5;
  }
  for (int i = 0;; ++i) {
    const auto s = spread(right);
    if (!s || i == 60) {
      // Spread unreachable: keep the mean at the widest sigma that still solves.
      const double widest = right / 1.5;
      const auto mu = i > 0 ? solve_location(mean, widest, lo, hi) : std::nullopt;
      return mu ? TruncatedNormal{*mu, widest, lo, hi} : fallback;
    }
    if (*s >= std) break;
    right *= 1.5;
  }
  for (int i = 0; i < kBisections; ++i) {
    const double mid = std::sqrt(left * right);
    const auto s = spread(mid);
    if (!s) return fallback;
    (*s < std ? left : right) = mid;
  }
  const double sigma = std::sqrt(left * right);
  const auto mu = solve_location(mean, sigma, lo, hi);
  return mu ? TruncatedNormal{*mu, sigma, lo, hi} : fallback;
}

CohortSpec default_cohort_spec(Altitude altitude) {
  CohortSpec spec;
  spec.altitude = altitude;
  if (altitude == Altitude::HighAltitude) {
    spec.n_participants = 39;
    spec.rhepo_fraction = 12.0 / 39.0;
    spec.skipped_control_visits = 10;
  }
  return spec;
}

std::size_t rhepo_participants(const CohortSpec& spec) {
  return static_cast<std::size_t>(
      std::llround(spec.rhepo_fraction * static_cast<double>(spec.n_participants)));
}

void validate(const CohortSpec& spec) {
  if (spec.washout_weeks < 0 || spec.washout_weeks > kLastWeek - 8) {
    throw DomainError("washout_weeks must lie in [0, 4]");
  }
  if (spec.n_participants == 0) throw DomainError("cohort needs at least one participant");
  if (!(spec.rhepo_fraction >= 0.0 && spec.rhepo_fraction < 1.0)) {
    throw DomainError("rhepo_fraction must lie in [0, 1)");
  }
  if (!(spec.missing_rate >= 0.0 && spec.missing_rate < 1.0)) {
    throw DomainError("missing_rate must lie in [0, 1)");
  }
  const std::size_t weeks = kLastWeek - kFirstWeek + 1;
  const std::size_t rhepo_samples = rhepo_participants(spec) * 4;
  const std::size_t control_slots = spec.n_participants * weeks - rhepo_samples;
  if (spec.skipped_control_visits >= control_slots) {
    throw DomainError("skipped_control_visits leaves no control samples");
  }
}

Cohort generate_cohort(const CohortSpec& spec, const ParameterDistSpec& dist) {
  validate(spec);
  const Calibrated cal = calibrate(dist);
  const std::size_t n_arm = rhepo_participants(spec);

  std::vector<Sample> samples;
  samples.reserve(spec.n_participants * (kLastWeek - kFirstWeek + 1));
  const std::uint64_t participant_seed = derive_seed(spec.seed, kParticipantStream);
  for (std::size_t i = 0; i < spec.n_participants; ++i) {
    Rng rng(derive_seed(participant_seed, i));
    const bool in_arm = i < n_arm;
    for (int week = kFirstWeek; week <= kLastWeek; ++week) {
      const double w = (in_arm && !spec.label_blind) ? rhepo_weight(week, spec.washout_weeks) : 0.0;
      Sample s;
      s.participant_id = participant_id(i);
      s.altitude = spec.altitude;
      s.week = week;
      s.label = in_arm && derive_period(week) == Period::Intervention ? Label::RhEpo
                                                                       : Label::Control;
      s.profile = draw_profile(cal, w, rng);
      samples.push_back(std::move(s));
    }
  }

  if (spec.skipped_control_visits > 0) {
    std::vector<std::size_t> control;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].label == Label::Control) control.push_back(i);
    }
    Rng rng(derive_seed(spec.seed, kSkipStream));
    rng.shuffle(std::span<std::size_t>(control));
    std::vector<bool> drop(samples.size(), false);
    for (std::size_t k = 0; k < spec.skipped_control_visits; ++k) drop[control[k]] = true;
    std::vector<Sample> kept;
    kept.reserve(samples.size() - spec.skipped_control_visits);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!drop[i]) kept.push_back(std::move(samples[i]));
    }
    samples = std::move(kept);
  }

  Cohort cohort(std::move(samples), "synthetic:" + std::string(to_string(spec.altitude)) +
                                        ":seed=" + std::to_string(spec.seed));
  if (spec.missing_rate > 0.0) {
    return inject_missingness(cohort, spec.missing_rate, derive_seed(spec.seed, kMissingStream));
  }
  return cohort;
}

Cohort generate_cohort(const CohortSpec& spec) {
  return generate_cohort(spec, builtin_table_spec(spec.altitude));
}

Cohort inject_missingness(const Cohort& cohort, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate < 1.0)) throw DomainError("missing rate must lie in [0, 1)");
  if (rate == 0.0) return cohort;
  Rng rng(seed);
  std::vector<Sample> samples(cohort.samples().begin(), cohort.samples().end());
  for (Sample& s : samples) {
    for (Parameter p : measured_parameters()) {
      if (rng.uniform01() < rate) s.profile.set(p, std::nullopt);
    }
  }
  return Cohort(std::move(samples), cohort.provenance());
}

std::string cohort_spec_to_json(const CohortSpec& spec) {
  nlohmann::ordered_json j;
  j["format"] = "epodetect-cohort-spec";
  j["version"] = 1;
  j["altitude"] = std::string(to_string(spec.altitude));
  j["n_participants"] = spec.n_participants;
  j["rhepo_fraction"] = spec.rhepo_fraction;
  j["rhepo_participants"] = rhepo_participants(spec);
  j["skipped_control_visits"] = spec.skipped_control_visits;
  j["missing_rate"] = spec.missing_rate;
  j["seed"] = spec.seed;
  j["washout_weeks"] = spec.washout_weeks;
  j["label_blind"] = spec.label_blind;
  return j.dump(2) + "\n";
}

CohortSpec cohort_spec_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "epodetect-cohort-spec") {
      throw ParseError(0, "not a cohort spec document");
    }
    if (j.at("version").get<int>() != 1) throw ParseError(0, "unsupported cohort spec version");
    CohortSpec spec;
    const auto alt = parse_altitude(j.at("altitude").get<std::string>());
    if (!alt) throw ParseError(0, "unknown altitude in cohort spec");
    spec.altitude = *alt;
    spec.n_participants = j.at("n_participants").get<std::size_t>();
    spec.rhepo_fraction = j.at("rhepo_fraction").get<double>();
    spec.skipped_control_visits = j.at("skipped_control_visits").get<std::size_t>();
    spec.missing_rate = j.at("missing_rate").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.washout_weeks = j.value("washout_weeks", 2);
    spec.label_blind = j.value("label_blind", false);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("cohort spec: ") + e.what());
  }
}

}  // namespace epodetect
