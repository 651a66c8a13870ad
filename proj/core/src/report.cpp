#include "epodetect/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "epodetect/error.hpp"
#include "epodetect/format.hpp"
#include "epodetect/tuning.hpp"

namespace epodetect {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kRowKeys[] = {"accuracy", "f1", "sensitivity", "specificity", "auc"};
constexpr const char* kRowNames[] = {"Accuracy", "F1-score", "Sensitivity", "Specificity", "AUC"};

Json opt(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

Json finite(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json column(double accuracy, std::optional<double> f1, std::optional<double> sens,
            std::optional<double> spec, std::optional<double> auc) {
  Json j;
  j["accuracy"] = accuracy;
  j["f1"] = opt(f1);
  j["sensitivity"] = opt(sens);
  j["specificity"] = opt(spec);
  j["auc"] = opt(auc);
  return j;
}

Json sota_column() {
  Json j;
  j["accuracy"] = nullptr;
  j["f1"] = nullptr;
  j["sensitivity"] = kSotaBaseline.sensitivity;
  j["specificity"] = kSotaBaseline.specificity;
  j["auc"] = kSotaBaseline.auc;
  return j;
}

Json params_json(const TrialParams& params) {
  Json j = Json::object();
  for (const auto& [name, value] : params) {
    std::visit([&](const auto& v) { j[name] = v; }, value);
  }
  return j;
}

Json metrics_json(const MetricsReport& m) {
  Json j;
  j["accuracy"] = m.accuracy;
  j["precision"] = opt(m.precision);
  j["recall"] = opt(m.recall);
  j["f1"] = opt(m.f1);
  j["f1_unscaled"] = opt(m.f1_unscaled);
  j["sensitivity"] = opt(m.sensitivity);
  j["specificity"] = opt(m.specificity);
  return j;
}

Json confusion_json(const ConfusionMatrix& cm) {
  return Json{{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

Json model_json(const ModelEvaluation& e) {
  Json j;
  j["kind"] = std::string(to_string(e.kind));
  j["name"] = std::string(display_name(e.kind));
  j["hyperparameters"] = params_json(learner_params(e.spec));
  j["threshold"] = e.threshold;
  j["confusion"] = confusion_json(e.test_confusion);
  Json test = metrics_json(e.test_metrics);
  test["auc"] = e.test_roc.auc;
  j["test"] = std::move(test);
  j["youden"] = Json{{"threshold", finite(e.youden.threshold)},
                     {"fpr", e.youden.fpr},
                     {"tpr", e.youden.tpr},
                     {"j", e.youden.tpr - e.youden.fpr}};
  Json folds = Json::array();
  for (const FoldResult& f : e.cv.folds) {
    Json fj;
    fj["fold"] = f.fold;
    fj["n_train"] = f.n_train;
    fj["n_test"] = f.n_test;
    fj["confusion"] = confusion_json(f.confusion);
    fj["metrics"] = metrics_json(f.metrics);
    fj["auc"] = opt(f.auc);
    folds.push_back(std::move(fj));
  }
  j["cv_folds"] = std::move(folds);
  if (e.hpo) {
    Json h;
    h["n_trials"] = e.hpo->history.size();
    std::size_t pruned = 0;
    for (const TrialRecord& t : e.hpo->history) pruned += t.pruned ? 1 : 0;
    h["n_pruned"] = pruned;
    h["all_pruned"] = e.hpo->all_pruned;
    h["best_trial"] = e.hpo->best.index;
    h["best_mean_auc"] = e.hpo->best.mean_score;
    h["best_params"] = params_json(e.hpo->best.params);
    j["search"] = std::move(h);
  }
  return j;
}

std::string cell(const Json& v) {
  if (v.is_null()) return "-";
  return format_fixed(v.get<double>(), 2);
}

void render_block(std::ostringstream& out, const std::string& title, const Json& columns,
                  const Json& block) {
  out << title << "\n";
  out << std::left << std::setw(14) << "Topic";
  for (const auto& c : columns) out << std::right << std::setw(10) << c.get<std::string>();
  out << "\n";
  for (std::size_t r = 0; r < std::size(kRowKeys); ++r) {
    out << std::left << std::setw(14) << kRowNames[r];
    for (const auto& c : columns) {
      out << std::right << std::setw(10) << cell(block.at(c.get<std::string>()).at(kRowKeys[r]));
    }
    out << "\n";
  }
}

}  // namespace

std::string report_to_json(const EvaluationReport& report) {
  Json j;
  j["format"] = "epodetect-report";
  j["version"] = 1;
  j["seed"] = report.seed;
  j["split"] = Json{{"train_fraction", report.train_fraction},
                    {"n_train", report.n_train},
                    {"n_test", report.n_test},
                    {"n_train_positive", report.n_train_positive},
                    {"n_test_positive", report.n_test_positive}};
  j["k_folds"] = report.k_folds;
  j["features"] = report.features;

  Json columns = Json::array({"SOTA"});
  Json test = Json::object();
  Json cv = Json::object();
  test["SOTA"] = sota_column();
  cv["SOTA"] = sota_column();
  for (const ModelEvaluation& e : report.models) {
    const std::string name(display_name(e.kind));
    columns.push_back(name);
    const MetricsReport& m = e.test_metrics;
    test[name] = column(m.accuracy, m.f1, m.sensitivity, m.specificity, e.test_roc.auc);
    const CvSummary& s = e.cv.mean;
    cv[name] = column(s.accuracy, s.f1, s.sensitivity, s.specificity, s.auc);
  }
  j["columns"] = std::move(columns);
  j["test_split"] = std::move(test);
  j["cv_mean"] = std::move(cv);

  Json models = Json::array();
  for (const ModelEvaluation& e : report.models) models.push_back(model_json(e));
  j["models"] = std::move(models);
  return j.dump(2) + "\n";
}

std::string render_report_table(std::string_view report_json) {
  Json j;
  try {
    j = Json::parse(report_json);
  } catch (const Json::parse_error& e) {
    throw ParseError(0, std::string("report: ") + e.what());
  }
  std::ostringstream out;
  try {
    const Json& columns = j.at("columns");
    out << "seed " << j.at("seed").get<std::uint64_t>() << ", features:";
    for (const auto& f : j.at("features")) out << " " << f.get<std::string>();
    out << "\n";
    const Json& split = j.at("split");
    out << "train " << split.at("n_train").get<std::size_t>() << " ("
        << split.at("n_train_positive").get<std::size_t>() << " rhEPO), test "
        << split.at("n_test").get<std::size_t>() << " ("
        << split.at("n_test_positive").get<std::size_t>() << " rhEPO)\n\n";
    render_block(out, "Held-out test split", columns, j.at("test_split"));
    out << "\n";
    render_block(out, std::to_string(j.at("k_folds").get<std::size_t>()) +
                          "-fold cross-validation mean (training split)",
                 columns, j.at("cv_mean"));
    out << "\n";
    for (const auto& m : j.at("models")) {
      const Json& t = m.at("test");
      out << m.at("name").get<std::string>() << ": threshold "
          << format_double(m.at("threshold").get<double>()) << ", F1 " << cell(t.at("f1"))
          << " (P*R/(P+R) = " << cell(t.at("f1_unscaled")) << "), Youden J "
          << cell(m.at("youden").at("j")) << " at fpr " << cell(m.at("youden").at("fpr"))
          << " tpr " << cell(m.at("youden").at("tpr")) << "\n";
    }
  } catch (const Json::exception& e) {
    throw ParseError(0, std::string("report: ") + e.what());
  }
  return out.str();
}

}  // namespace epodetect
