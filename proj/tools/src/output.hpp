#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "epodetect/profile.hpp"

namespace epodetect::cli {

/// Writes `content` to a sibling temp file and renames it over `path`.
/// Creates the parent directory. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Sample counts in the layout of the study's samples table.
std::string counts_table(const Cohort& cohort);

}  // namespace epodetect::cli
