#include "commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "epodetect/cohort_csv.hpp"
#include "epodetect/error.hpp"
#include "epodetect/feature_matrix.hpp"
#include "epodetect/impute.hpp"
#include "epodetect/model_io.hpp"
#include "epodetect/pipeline.hpp"
#include "epodetect/report.hpp"
#include "epodetect/roc.hpp"
#include "epodetect/screen.hpp"
#include "epodetect/synth.hpp"
#include "output.hpp"

namespace epodetect::cli {
namespace {

using Json = nlohmann::ordered_json;

Cohort read_cohort(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return parse_cohort_csv(in, path);
}

CohortSpec simulation_spec(const SourceConfig& config) {
  CohortSpec spec = default_cohort_spec(config.altitude);
  spec.seed = config.seed;
  spec.missing_rate = config.missing_rate;
  return spec;
}

Cohort load(const SourceConfig& config) {
  if (config.simulate) return generate_cohort(simulation_spec(config));
  if (config.input.empty()) throw Error(ErrorCode::Usage, "one of --input or --simulate is required");
  Cohort cohort = read_cohort(config.input);
  if (config.missing_rate > 0.0) cohort = inject_missingness(cohort, config.missing_rate, config.seed);
  return cohort;
}

std::string source_name(const SourceConfig& config) {
  return config.simulate ? "simulate" : config.input;
}

std::string cohort_csv(const Cohort& cohort) {
  std::ostringstream ss;
  write_cohort_csv(ss, cohort);
  return ss.str();
}

ScreenOptions screen_options(const ScreenConfig& config) {
  ScreenOptions opts;
  opts.alpha = config.alpha;
  if (config.corr_threshold > 0.0) {
    opts.correlation_threshold = config.corr_threshold;
  } else {
    opts.correlation_threshold.reset();
  }
  return opts;
}

std::string join_names(const std::vector<Parameter>& params) {
  std::string s;
  for (Parameter p : params) {
    if (!s.empty()) s += ", ";
    s += display_name(p);
  }
  return s.empty() ? "(none)" : s;
}

std::vector<ModelKind> parse_models(const std::string& name) {
  if (name == "all") return {ModelKind::Svc, ModelKind::Forest, ModelKind::Boosted};
  if (name == "svc") return {ModelKind::Svc};
  if (name == "rf") return {ModelKind::Forest};
  if (name == "boost") return {ModelKind::Boosted};
  throw Error(ErrorCode::Usage, "unknown model '" + name + "'");
}

std::string normalizer_json(const EvaluationReport& report) {
  Json j;
  j["features"] = report.features;
  j["means"] = report.normalizer.means();
  j["stds"] = report.normalizer.stds();
  return j.dump(2) + "\n";
}

}  // namespace

void run_ingest(const SourceConfig& config, std::ostream& out) {
  const Cohort cohort = load(config);
  const Cohort imputed = impute_missing(cohort);
  out << counts_table(imputed);
  const auto path = config.output_dir / "cohort_imputed.csv";
  write_file_atomic(path, cohort_csv(imputed));
  out << "wrote " << path.string() << "\n";
}

void run_screen(const ScreenConfig& config, std::ostream& out) {
  const Cohort cohort = impute_missing(load(config.source));
  const ParameterScreen screen =
      screen_parameters(cohort, config.source.altitude, screen_options(config));

  Json j = Json::parse(screen_to_json(screen, config.top_k));
  j["seed"] = config.source.seed;
  j["source"] = source_name(config.source);
  std::ostringstream csv;
  write_screen_csv(csv, screen);
  write_file_atomic(config.source.output_dir / "screen.json", j.dump(2) + "\n");
  write_file_atomic(config.source.output_dir / "screen.csv", csv.str());

  out << "rejected at alpha " << config.alpha << ": " << join_names(screen.rejected) << "\n";
  out << "selected (top " << config.top_k << "): " << join_names(screen.top(config.top_k))
      << "\n";
}

void run_simulate(const SimulateConfig& config, std::ostream& out) {
  CohortSpec spec = simulation_spec(config.source);
  if (config.participants) spec.n_participants = *config.participants;
  if (config.rhepo_fraction) spec.rhepo_fraction = *config.rhepo_fraction;
  if (config.skipped_visits) spec.skipped_control_visits = *config.skipped_visits;
  spec.label_blind = config.label_blind;
  const Cohort cohort = generate_cohort(spec);
  write_file_atomic(config.source.output_dir / "cohort.csv", cohort_csv(cohort));
  write_file_atomic(config.source.output_dir / "cohort.json", cohort_spec_to_json(spec));
  out << counts_table(cohort);
}

void run_train_eval(const TrainEvalConfig& config, std::ostream& out) {
  const SourceConfig& source = config.screen.source;
  const std::vector<ModelKind> models = parse_models(config.model);
  const Cohort cohort = impute_missing(load(source));

  std::vector<Parameter> features;
  if (!config.features.empty()) {
    for (const std::string& name : config.features) {
      const auto p = parse_parameter(name);
      if (!p) throw Error(ErrorCode::Usage, "unknown parameter '" + name + "'");
      features.push_back(*p);
    }
  } else {
    const ParameterScreen screen =
        screen_parameters(cohort, source.altitude, screen_options(config.screen));
    features = screen.top(config.screen.top_k);
    if (features.empty()) throw DomainError("screening selected no parameters; pass --features");
  }

  const FeatureMatrix data = make_feature_matrix(cohort, source.altitude, features);
  PipelineOptions opts;
  opts.models = models;
  opts.train_fraction = config.split;
  opts.k_folds = config.k_folds;
  opts.seed = source.seed;
  opts.hpo_trials = config.hpo_trials;
  const EvaluationReport report = evaluate_models(data, opts);

  const std::string json = report_to_json(report);
  const std::string table = render_report_table(json);
  const auto& dir = source.output_dir;
  write_file_atomic(dir / "report.json", json);
  write_file_atomic(dir / "report.txt", table);
  write_file_atomic(dir / "normalizer.json", normalizer_json(report));
  for (const ModelEvaluation& e : report.models) {
    const std::string kind(to_string(e.kind));
    std::ostringstream roc;
    write_roc_csv(roc, e.test_roc);
    write_file_atomic(dir / ("roc_" + kind + ".csv"), roc.str());
    write_file_atomic(dir / ("model_" + kind + ".json"), model_to_json(e.model));
  }
  out << table;
}

}  // namespace epodetect::cli
