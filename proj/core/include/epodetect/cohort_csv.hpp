#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>

#include "epodetect/profile.hpp"

namespace epodetect {

/// Header columns of the cohort CSV, in order. OFF_HR is never an input.
const std::array<std::string_view, 20>& cohort_csv_header() noexcept;

/// Reads a cohort from CSV. Empty cells become missing values. Throws
/// ParseError (with the 1-based line number) on malformed rows and
/// IntegrityError on duplicate (participant, altitude, week) keys. A trailing
/// OFF_HR column is accepted and ignored.
Cohort parse_cohort_csv(std::istream& in, std::string provenance = "csv");

/// Writes the cohort in the same schema; numbers use shortest round-trip
/// formatting so parse(write(c)) == c.
void write_cohort_csv(std::ostream& out, const Cohort& cohort);

}  // namespace epodetect
