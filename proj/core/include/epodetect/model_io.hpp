#pragma once

#include <string>
#include <string_view>

#include "epodetect/model.hpp"

namespace epodetect {

inline constexpr int kModelFormatVersion = 1;

/// Versioned JSON document holding the model kind, hyperparameters, seed and
/// the fitted structure (trees or support vectors). Doubles are written with
/// round-trip precision, so a loaded model scores identically.
std::string model_to_json(const Model& model);

/// Throws ParseError on malformed documents or unsupported versions.
Model model_from_json(std::string_view text);

}  // namespace epodetect
