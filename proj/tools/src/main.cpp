#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "epodetect/error.hpp"

namespace {

using epodetect::Altitude;
using namespace epodetect::cli;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

struct SourceFlags {
  std::string altitude = "sea";
  std::string output_dir = ".";
};

void add_source(CLI::App* cmd, SourceConfig& cfg, SourceFlags& flags, bool allow_simulate) {
  auto* input = cmd->add_option("--input", cfg.input, "Cohort CSV");
  if (allow_simulate) {
    auto* sim = cmd->add_flag("--simulate", cfg.simulate,
                              "Use a generated cohort for --altitude and --seed");
    input->excludes(sim);
  }
  cmd->add_option("--altitude", flags.altitude, "sea or alt")
      ->check(CLI::IsMember({"sea", "alt"}))
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Seed for every randomised stage")->capture_default_str();
  cmd->add_option("--missing-rate", cfg.missing_rate, "Blank this share of measured cells")
      ->check(CLI::Range(0.0, 0.999999))
      ->capture_default_str();
  cmd->add_option("--output-dir", flags.output_dir, "Directory for output files")
      ->capture_default_str();
}

void finish_source(SourceConfig& cfg, const SourceFlags& flags) {
  cfg.altitude = flags.altitude == "alt" ? Altitude::HighAltitude : Altitude::SeaLevel;
  cfg.output_dir = flags.output_dir;
}

void add_screen(CLI::App* cmd, ScreenConfig& cfg) {
  cmd->add_option("--alpha", cfg.alpha, "K-S significance level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--top-k", cfg.top_k, "Number of parameters to keep")->capture_default_str();
  cmd->add_option("--corr-threshold", cfg.corr_threshold,
                  "Drop the weaker of two selected parameters above this |r|; 0 disables")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indirect rhEPO detection from haematological profiles"};
  app.require_subcommand(1);

  SourceConfig ingest_cfg;
  SourceFlags ingest_flags;
  auto* ingest = app.add_subcommand("ingest", "Validate and impute a cohort CSV");
  add_source(ingest, ingest_cfg, ingest_flags, false);
  ingest->get_option("--input")->required();

  ScreenConfig screen_cfg;
  SourceFlags screen_flags;
  auto* screen = app.add_subcommand("screen", "K-S screening of all parameters");
  add_source(screen, screen_cfg.source, screen_flags, true);
  add_screen(screen, screen_cfg);

  SimulateConfig sim_cfg;
  SourceFlags sim_flags;
  auto* simulate = app.add_subcommand("simulate", "Generate a calibrated synthetic cohort");
  add_source(simulate, sim_cfg.source, sim_flags, false);
  simulate->remove_option(simulate->get_option("--input"));
  simulate->add_option("--participants", sim_cfg.participants, "Number of participants");
  simulate->add_option("--rhepo-fraction", sim_cfg.rhepo_fraction, "Share in the rhEPO arm");
  simulate->add_option("--skipped-visits", sim_cfg.skipped_visits, "Control visits to drop");
  simulate->add_flag("--label-blind", sim_cfg.label_blind,
                     "Draw every sample from the control distributions");

  TrainEvalConfig train_cfg;
  SourceFlags train_flags;
  auto* train = app.add_subcommand("train-eval", "Fit and evaluate SVC, RF and boosted trees");
  add_source(train, train_cfg.screen.source, train_flags, true);
  add_screen(train, train_cfg.screen);
  train->add_option("--features", train_cfg.features, "Comma-separated parameters")
      ->delimiter(',');
  train->add_option("--model", train_cfg.model, "svc, rf, boost or all")
      ->check(CLI::IsMember({"svc", "rf", "boost", "all"}))
      ->capture_default_str();
  train->add_option("--hpo-trials", train_cfg.hpo_trials, "Random-search trials per model (0 = defaults)")
      ->capture_default_str();
  train->add_option("--split", train_cfg.split, "Training fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  train->add_option("--k-folds", train_cfg.k_folds, "Cross-validation folds")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[" << epodetect::error_code_name(epodetect::ErrorCode::Usage)
              << "]: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (ingest->parsed()) {
      finish_source(ingest_cfg, ingest_flags);
      run_ingest(ingest_cfg, std::cout);
    } else if (screen->parsed()) {
      finish_source(screen_cfg.source, screen_flags);
      run_screen(screen_cfg, std::cout);
    } else if (simulate->parsed()) {
      finish_source(sim_cfg.source, sim_flags);
      run_simulate(sim_cfg, std::cout);
    } else if (train->parsed()) {
      finish_source(train_cfg.screen.source, train_flags);
      run_train_eval(train_cfg, std::cout);
    }
  } catch (const epodetect::Error& e) {
    std::cerr << "error[" << epodetect::error_code_name(e.code()) << "]: " << e.what() << "\n";
    return e.code() == epodetect::ErrorCode::Usage ? kExitUsage : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error[E_INTERNAL]: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
