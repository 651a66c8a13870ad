#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epodetect/profile.hpp"

namespace epodetect::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct SourceConfig {
  std::string input;      // cohort CSV; empty when simulating
  bool simulate = false;  // generate the default cohort for `altitude`
  Altitude altitude = Altitude::SeaLevel;
  std::uint64_t seed = kDefaultSeed;
  double missing_rate = 0.0;
  std::filesystem::path output_dir = ".";
};

struct ScreenConfig {
  SourceConfig source;
  double alpha = 0.001;
  std::size_t top_k = 8;
  double corr_threshold = 0.9;  // <= 0 disables the correlation filter
};

struct SimulateConfig {
  SourceConfig source;
  std::optional<std::size_t> participants;
  std::optional<double> rhepo_fraction;
  std::optional<std::size_t> skipped_visits;
  bool label_blind = false;
};

struct TrainEvalConfig {
  ScreenConfig screen;
  std::vector<std::string> features;  // overrides the screened selection
  std::string model = "all";
  std::size_t hpo_trials = 20;  // 0 keeps the default hyperparameters
  double split = 0.8;
  std::size_t k_folds = 5;
};

void run_ingest(const SourceConfig& config, std::ostream& out);
void run_screen(const ScreenConfig& config, std::ostream& out);
void run_simulate(const SimulateConfig& config, std::ostream& out);
void run_train_eval(const TrainEvalConfig& config, std::ostream& out);

}  // namespace epodetect::cli
