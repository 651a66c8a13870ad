// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "epodetect/boosted.hpp"
#include "epodetect/cross_validation.hpp"
#include "epodetect/feature_matrix.hpp"
#include "epodetect/hpo.hpp"
#include "epodetect/ks.hpp"
#include "epodetect/metrics.hpp"
#include "epodetect/normalizer.hpp"
#include "epodetect/pipeline.hpp"
#include "epodetect/random.hpp"
#include "epodetect/roc.hpp"
#include "epodetect/screen.hpp"
#include "epodetect/split.hpp"
#include "epodetect/svc.hpp"
#include "epodetect/synth.hpp"
#include "epodetect/table_spec.hpp"
#include "epodetect/tree.hpp"
#include "epodetect/tuning.hpp"

#ifndef EPODETECT_CLI_PATH
#error "EPODETECT_CLI_PATH must point at the epodetect executable"
#endif

namespace {

using namespace epodetect;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void info(const std::string& line) { std::cout << "    " << line << "\n"; }

std::string fmt(double v, int digits = 4) {
  std::ostringstream ss;
  ss.precision(digits);
  ss << v;
  return ss.str();
}

struct Outcome {
  bool pass;
  std::string detail;
};

// Brute-force two-sample statistic: both ECDFs at every pooled value.
double brute_ks(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  double best = 0.0;
  for (double x : pooled) {
    const auto ca = static_cast<double>(std::count_if(a.begin(), a.end(), [x](double v) { return v <= x; }));
    const auto cb = static_cast<double>(std::count_if(b.begin(), b.end(), [x](double v) { return v <= x; }));
    best = std::max(best, std::abs(ca / static_cast<double>(a.size()) - cb / static_cast<double>(b.size())));
  }
  return best;
}

Outcome criterion1() {
  Rng rng(1);
  std::size_t mismatches = 0;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a(1 + rng.uniform_index(50));
    std::vector<double> b(1 + rng.uniform_index(50));
    // Values on a coarse grid so ties are common.
    for (double& v : a) v = static_cast<double>(rng.uniform_index(12)) * 0.5;
    for (double& v : b) v = static_cast<double>(rng.uniform_index(12)) * 0.5 + 0.5;
    if (ks_statistic(a, b) != brute_ks(a, b)) ++mismatches;
  }
  const double elapsed = seconds_since(t0);
  return {mismatches == 0 && elapsed < 5.0,
          std::to_string(mismatches) + " mismatches in 1000 pairs, " + fmt(elapsed, 3) + " s"};
}

Outcome criterion2() {
  Rng rng(2);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(50), b(50);
    for (double& v : a) v = rng.normal();
    for (double& v : b) v = rng.normal();
    const double d = ks_statistic(a, b);
    const double asym = ks_pvalue(d, a.size(), b.size());
    const double perm = ks_permutation_pvalue(a, b, 10'000, derive_seed(2, trial));
    worst = std::max(worst, std::abs(asym - perm));
  }
  return {worst <= 0.03, "max |asymptotic - permutation| = " + fmt(worst) + " over 20 cases"};
}

constexpr double kAlpha = 0.001;

std::vector<Parameter> must_reject() {
  return {Parameter::RetCount, Parameter::RetPct, Parameter::Irf,   Parameter::Lfr,
          Parameter::Mfr,      Parameter::Hfr,    Parameter::RdwSd, Parameter::RdwCv,
          Parameter::OffHr};
}

std::vector<Parameter> must_not_reject() {
  return {Parameter::Wbc, Parameter::RetHb, Parameter::Mch, Parameter::Mcv, Parameter::Rbc};
}

std::map<Parameter, int> reject_counts(Altitude altitude, int washout, int n_seeds) {
  std::map<Parameter, int> counts;
  for (int seed = 0; seed < n_seeds; ++seed) {
    CohortSpec spec = default_cohort_spec(altitude);
    spec.seed = static_cast<std::uint64_t>(seed);
    spec.washout_weeks = washout;
    const Cohort cohort = generate_cohort(spec);
    ScreenOptions options;
    options.alpha = kAlpha;
    const ParameterScreen screen = screen_parameters(cohort, altitude, options);
    for (Parameter p : all_parameters()) counts[p] += screen.result(p).reject ? 1 : 0;
  }
  return counts;
}

Outcome criterion3() {
  const auto t0 = Clock::now();
  bool pass = true;
  const auto sea = reject_counts(Altitude::SeaLevel, 2, 20);
  std::string failed;
  for (Parameter p : must_reject()) {
    const bool ok = sea.at(p) >= 18;
    pass = pass && ok;
    if (!ok) failed += " " + std::string(display_name(p));
    info(std::string(ok ? "ok   " : "FAIL ") + std::string(display_name(p)) + " rejects in " +
         std::to_string(sea.at(p)) + "/20 sea-level seeds (need >= 18)");
  }
  for (Parameter p : must_not_reject()) {
    const bool ok = 20 - sea.at(p) >= 18;
    pass = pass && ok;
    if (!ok) failed += " " + std::string(display_name(p));
    info(std::string(ok ? "ok   " : "FAIL ") + std::string(display_name(p)) +
         " does not reject in " + std::to_string(20 - sea.at(p)) + "/20 sea-level seeds (need >= 18)");
  }

  CohortSpec alt = default_cohort_spec(Altitude::HighAltitude);
  const ParameterScreen alt_screen =
      screen_parameters(generate_cohort(alt), Altitude::HighAltitude, ScreenOptions{kAlpha});
  const KsResult& hct = alt_screen.result(Parameter::Hct);
  pass = pass && hct.reject;
  if (!hct.reject) failed += " HCT(alt)";
  info(std::string(hct.reject ? "ok   " : "FAIL ") + "HCT at high altitude, seed 42: d = " +
       fmt(hct.d_statistic) + ", critical " + fmt(hct.critical_value) + ", p = " +
       fmt(hct.p_value));
  const double elapsed = seconds_since(t0);
  pass = pass && elapsed < 30.0;

  // Context only; not part of the verdict.
  const auto alt_counts = reject_counts(Altitude::HighAltitude, 2, 20);
  info("info: HCT at high altitude rejects in " + std::to_string(alt_counts.at(Parameter::Hct)) +
       "/20 seeds");
  const auto sea0 = reject_counts(Altitude::SeaLevel, 0, 20);
  std::string w0;
  for (Parameter p : {Parameter::RdwSd, Parameter::RdwCv, Parameter::OffHr}) {
    w0 += " " + std::string(display_name(p)) + " " + std::to_string(sea0.at(p)) + "/20";
  }
  info("info: with no washout, sea-level rejects:" + w0);

  return {pass, (failed.empty() ? "all parameters on target" : "off target:" + failed) +
                    ", " + fmt(elapsed, 3) + " s"};
}

double pairwise_auc(const std::vector<int>& y, const std::vector<double>& s) {
  double wins = 0, pairs = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[i] != 1 || y[j] != 0) continue;
      pairs += 1;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

Outcome criterion4() {
  Rng rng(4);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(99);
    std::vector<int> y(n);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = rng.uniform01() < 0.3 ? 1 : 0;
      s[i] = trial % 2 ? rng.normal() : static_cast<double>(rng.uniform_index(8));
    }
    y[0] = 1;
    y[1] = 0;
    if (roc_curve(y, s).auc != pairwise_auc(y, s)) ++mismatches;
  }
  // (TP, TN, FP, FN) = (50, 40, 10, 0)
  const MetricsReport m = metrics(ConfusionMatrix{50, 10, 0, 40});
  const bool identities = m.accuracy == 0.9 && m.sensitivity == 1.0 && m.specificity == 0.8;
  return {mismatches == 0 && identities,
          std::to_string(mismatches) + " AUC mismatches in 200 vectors; accuracy " +
              fmt(m.accuracy) + ", sensitivity " + fmt(*m.sensitivity) + ", specificity " +
              fmt(*m.specificity)};
}

double logistic_loss(int y, double m) {
  // -[y ln p + (1-y) ln(1-p)], p = sigmoid(m), in overflow-free form.
  const double z = y == 1 ? -m : m;
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

Outcome criterion5() {
  Rng rng(5);
  constexpr double kStep = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double m = rng.uniform01() * 16.0 - 8.0;
    const int y = static_cast<int>(rng.uniform_index(2));
    const auto [g, h] = logistic_grad_hess(y, m);
    const double fd_g = (logistic_loss(y, m + kStep) - logistic_loss(y, m - kStep)) / (2 * kStep);
    const double fd_h =
        (logistic_grad_hess(y, m + kStep).first - logistic_grad_hess(y, m - kStep).first) /
        (2 * kStep);
    worst = std::max({worst, std::abs(fd_g - g) / std::abs(g), std::abs(fd_h - h) / std::abs(h)});
  }

  double worst_gap = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double g = rng.normal() * 10.0;
    const double h = rng.uniform01() * 20.0 + 0.01;
    const double lambda = rng.uniform01() * 5.0;
    const double w = second_order_leaf_weight(g, h, lambda);
    auto objective = [&](double v) { return g * v + 0.5 * (h + lambda) * v * v; };
    double grid_min = objective(w);
    for (int k = -20000; k <= 20000; ++k) {
      grid_min = std::min(grid_min, objective(w + k * 1e-4));
    }
    worst_gap = std::max(worst_gap, objective(w) - grid_min);
  }
  return {worst <= 1e-6 && worst_gap <= 1e-9,
          "max relative FD error " + fmt(worst, 3) + "; leaf objective excess over grid " +
              fmt(worst_gap, 3)};
}

FeatureMatrix xor_data() {
  return FeatureMatrix({0, 0, 1, 1, 0, 1, 1, 0}, {0, 0, 1, 1}, {"x", "y"});
}

Outcome criterion6() {
  const auto t0 = Clock::now();
  constexpr std::uint64_t kSeed = 42;
  const Cohort cohort = generate_cohort(default_cohort_spec(Altitude::SeaLevel));
  ScreenOptions options;
  options.correlation_threshold = std::nullopt;
  const ParameterScreen screen = screen_parameters(cohort, Altitude::SeaLevel, options);
  const std::vector<Parameter> features = screen.top(8);
  std::string names;
  for (Parameter p : features) names += " " + std::string(display_name(p));
  info("features:" + names);
  const FeatureMatrix data = make_feature_matrix(cohort, Altitude::SeaLevel, features);

  bool pass = features.size() == 8;
  std::string detail;
  for (ModelKind kind : {ModelKind::Forest, ModelKind::Boosted}) {
    const double default_auc =
        *cross_validate(data, default_learner(kind, features.size()), 5, kSeed).mean.auc;
    // For context: a search on one fold assignment, scored on another.
    const FoldAssignment search_folds = kfold(data.labels(), 5, derive_seed(kSeed, 100), true);
    const FoldObjective objective{5, [&](const TrialParams& params, std::size_t fold) {
      const FitFunction fit = make_fit_function(learner_from_params(kind, params, features.size()));
      return evaluate_fold(data, search_folds, fold, fit, kSeed).auc.value_or(0.5);
    }};
    const HpoResult search = hpo_search(default_search_space(kind), objective, 20, true, kSeed);
    const double tuned_auc =
        *cross_validate(data, learner_from_params(kind, search.best.params, features.size()), 5,
                        kSeed)
             .mean.auc;
    info(std::string(display_name(kind)) + ": 5-fold AUC " + fmt(default_auc) +
         " with default hyperparameters (" + fmt(tuned_auc) + " after a 20-trial search)");
    pass = pass && default_auc >= 0.85;
    detail += std::string(display_name(kind)) + " AUC " + fmt(default_auc, 3) + ", ";
  }

  std::vector<double> trace;
  fit_boosted(data, BoostedParams{}, kSeed, &trace);
  bool monotone = true;
  for (std::size_t i = 1; i < trace.size(); ++i) monotone = monotone && trace[i] <= trace[i - 1];
  pass = pass && monotone;
  detail += std::string("log-loss ") + (monotone ? "monotone" : "NOT monotone") + ", ";

  SvcParams svc;
  svc.c = 10.0;
  svc.kernel = RbfKernel{1.0};
  const FeatureMatrix xd = xor_data();
  const SvcModel model = fit_svc(xd, svc);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < xd.rows(); ++i) {
    correct += (svc_decision(model, xd.row(i)) > 0.0) == (xd.label(i) == 1) ? 1 : 0;
  }
  pass = pass && correct == xd.rows();
  detail += "XOR accuracy " + fmt(static_cast<double>(correct) / 4.0) + ", ";

  const double elapsed = seconds_since(t0);
  pass = pass && elapsed < 120.0;
  return {pass, detail + fmt(elapsed, 3) + " s"};
}

Outcome criterion7() {
  Rng rng(7);
  std::size_t violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 10 + rng.uniform_index(300);
    std::vector<int> y(n);
    const double rate = 0.1 + 0.5 * rng.uniform01();
    for (int& v : y) v = rng.uniform01() < rate ? 1 : 0;
    const std::size_t k = 2 + rng.uniform_index(9);
    const FoldAssignment folds = kfold(y, k, static_cast<std::uint64_t>(trial), true);
    std::vector<int> seen(n, 0);
    std::size_t lo_pos = n, hi_pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
      const auto test = folds.test_indices(f);
      const auto train = folds.train_indices(f);
      if (test.size() + train.size() != n) ++violations;
      std::size_t pos = 0;
      for (std::size_t i : test) {
        ++seen[i];
        pos += static_cast<std::size_t>(y[i]);
      }
      for (std::size_t i : train) {
        if (std::binary_search(test.begin(), test.end(), i)) ++violations;
      }
      lo_pos = std::min(lo_pos, pos);
      hi_pos = std::max(hi_pos, pos);
    }
    if (hi_pos - lo_pos > 1) ++violations;
    violations += static_cast<std::size_t>(
        std::count_if(seen.begin(), seen.end(), [](int c) { return c != 1; }));
  }

  // The pipeline's normaliser must equal one fitted on the training split
  // alone, and must not move when test rows are shuffled or replaced.
  const Cohort cohort = generate_cohort(default_cohort_spec(Altitude::SeaLevel));
  const std::vector<Parameter> features{Parameter::RetPct, Parameter::Irf, Parameter::OffHr};
  const FeatureMatrix data = make_feature_matrix(cohort, Altitude::SeaLevel, features);
  PipelineOptions options;
  options.models = {ModelKind::Svc};
  const EvaluationReport base = evaluate_models(data, options);
  const SplitIndices split =
      train_test_split(data.labels(), options.train_fraction, derive_seed(options.seed, 0), true);
  bool normaliser_ok = base.normalizer == Normalizer::fit(data.subset(split.train));
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> values(data.values().begin(), data.values().end());
    for (int label : {0, 1}) {
      std::vector<std::size_t> rows;
      for (std::size_t i : split.test) {
        if (data.label(i) == label) rows.push_back(i);
      }
      std::vector<std::size_t> shuffled(rows);
      rng.shuffle(std::span<std::size_t>(shuffled));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t j = 0; j < data.cols(); ++j) {
          const double v = data.at(shuffled[r], j);
          values[rows[r] * data.cols() + j] = trial % 2 ? v : v * 5.0 + 100.0;
        }
      }
    }
    const FeatureMatrix changed(values, std::vector<int>(data.labels().begin(), data.labels().end()),
                                data.feature_names());
    normaliser_ok = normaliser_ok && evaluate_models(changed, options).normalizer == base.normalizer;
  }
  return {violations == 0 && normaliser_ok,
          std::to_string(violations) + " fold violations over 100 datasets; normaliser " +
              (normaliser_ok ? "train-only" : "DEPENDS ON TEST ROWS")};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> run_cli(const std::string& args, const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cmd = std::string("\"") + EPODETECT_CLI_PATH + "\" " + args +
                          " --output-dir \"" + dir.string() + "\" > \"" +
                          (dir / "stdout.txt").string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  std::map<std::string, std::string> files;
  files["<exit>"] = std::to_string(status);
  for (const auto& entry : fs::directory_iterator(dir)) {
    files[entry.path().filename().string()] = slurp(entry.path());
  }
  return files;
}

Outcome criterion8() {
  const fs::path root = fs::temp_directory_path() / "epodetect_acceptance_determinism";
  std::size_t identical = 0, total = 0;
  std::string diverged;
  for (const std::string command : {"simulate", "screen --simulate", "train-eval --simulate"}) {
    for (const std::uint64_t seed : {1ULL, 42ULL, 2024ULL}) {
      const std::string args = command + " --seed " + std::to_string(seed);
      const auto first = run_cli(args, root / "a");
      const auto second = run_cli(args, root / "b");
      ++total;
      if (first == second && first.at("<exit>") == "0" && first.size() > 2) {
        ++identical;
      } else {
        diverged += " [" + args + "]";
      }
    }
  }
  fs::remove_all(root);
  return {identical == total, std::to_string(identical) + "/" + std::to_string(total) +
                                  " command runs byte-identical" + diverged};
}

Outcome criterion9() {
  const auto& sea = builtin_table_spec(Altitude::SeaLevel);
  const auto& alt = builtin_table_spec(Altitude::HighAltitude);
  const double sea_off = compute_off_hr(10.0 * sea.stats(Parameter::Hb, Label::Control).mean,
                                        sea.stats(Parameter::RetPct, Label::Control).mean);
  const double alt_off = compute_off_hr(10.0 * alt.stats(Parameter::Hb, Label::Control).mean,
                                        alt.stats(Parameter::RetPct, Label::Control).mean);
  const bool pass = std::abs(sea_off - 85.0) <= 1.0 && std::abs(alt_off - 77.1) <= 2.0;
  return {pass, "sea level " + fmt(sea_off) + " (85.0 +/- 1.0), high altitude " + fmt(alt_off) +
                    " (77.1 +/- 2.0)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"K-S statistic equals brute force", criterion1},
      {"asymptotic vs permutation p-value", criterion2},
      {"screening pattern on calibrated cohorts", criterion3},
      {"AUC and metric identities", criterion4},
      {"logistic gradients and leaf weights", criterion5},
      {"learner sanity", criterion6},
      {"fold and normaliser hygiene", criterion7},
      {"CLI determinism", criterion8},
      {"OFF-HR on table control means", criterion9},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, run] = criteria[i];
    Outcome outcome{false, ""};
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << name
              << " - " << outcome.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
