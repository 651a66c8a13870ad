#pragma once

#include <string>
#include <string_view>

#include "epodetect/pipeline.hpp"

namespace epodetect {

/// Machine-readable evaluation report. "test_split" and "cv_mean" hold one
/// column per model plus the fixed SOTA reference column, each with
/// accuracy, f1, sensitivity, specificity and auc (null when undefined).
/// "models" carries the per-model details.
std::string report_to_json(const EvaluationReport& report);

/// Plain-text tables rendered from the JSON produced by report_to_json.
/// Throws ParseError on malformed input.
std::string render_report_table(std::string_view report_json);

}  // namespace epodetect
