#pragma once

#include "epodetect/profile.hpp"

namespace epodetect {

/// Median imputation of missing measured parameters.
///
/// A missing value is replaced by the median of that parameter over the same
/// participant's non-missing samples at the same altitude. When the whole
/// participant-altitude group lacks the parameter, the altitude-wide median is
/// used, then the cohort-wide median. Imputed LFR/MFR/HFR values are rescaled
/// so the three fractions still sum to 100; measured values are never
/// touched. Throws ImputationError naming the parameter when it is missing in
/// every sample of the cohort.
Cohort impute_missing(const Cohort& cohort);

}  // namespace epodetect
