#include "epodetect/cohort_csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <tuple>
#include <vector>

#include "epodetect/error.hpp"
#include "epodetect/format.hpp"

namespace epodetect {
namespace {

constexpr std::size_t kFixedColumns = 4;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits one line; supports double-quoted fields with "" escapes.
std::vector<std::string> split_row(std::string_view line, std::size_t row) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw ParseError(row, "unterminated quoted field");
  fields.emplace_back(trim(cur));
  return fields;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

double parse_number(std::string_view text, std::string_view column, std::size_t row) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError(row, "column " + std::string(column) + ": '" +
                              std::string(text) + "' is not a number");
  }
  return value;
}

int parse_week(std::string_view text, std::size_t row) {
  int week = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), week);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError(row, "week '" + std::string(text) + "' is not an integer");
  }
  if (week < kFirstWeek || week > kLastWeek) {
    throw ParseError(row, "week " + std::to_string(week) + " outside 1..12");
  }
  return week;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

const std::array<std::string_view, 20>& cohort_csv_header() noexcept {
  static const auto header = [] {
    std::array<std::string_view, 20> h{"participant_id", "altitude", "week", "label"};
    for (std::size_t i = 0; i < kMeasuredCount; ++i) {
      h[kFixedColumns + i] = column_name(static_cast<Parameter>(i));
    }
    return h;
  }();
  return header;
}

Cohort parse_cohort_csv(std::istream& in, std::string provenance) {
  const auto& header = cohort_csv_header();
  std::string line;
  std::size_t row = 0;

  // Header, skipping a UTF-8 BOM.
  bool have_header = false;
  while (std::getline(in, line)) {
    ++row;
    if (row == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!trim(line).empty()) {
      have_header = true;
      break;
    }
  }
  if (!have_header) throw ParseError(0, "input is empty; header row required");
  auto names = split_row(line, row);
  // A trailing OFF_HR column is tolerated and ignored; OFF-HR is always recomputed.
  const bool has_off_hr = names.size() == header.size() + 1 && iequals(names.back(), "OFF_HR");
  if (has_off_hr) names.pop_back();
  const std::size_t n_columns = names.size() + (has_off_hr ? 1 : 0);
  if (names.size() != header.size()) {
    throw ParseError(row, "header has " + std::to_string(names.size()) +
                              " columns, expected " + std::to_string(header.size()));
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!iequals(names[i], header[i])) {
      throw ParseError(row, "header column " + std::to_string(i + 1) + " is '" +
                                names[i] + "', expected '" + std::string(header[i]) + "'");
    }
  }

  std::vector<Sample> samples;
  std::map<std::tuple<std::string, Altitude, int>, std::size_t> seen;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line, row);
    if (cells.size() != n_columns) {
      throw ParseError(row, "expected " + std::to_string(n_columns) +
                                " cells, found " + std::to_string(cells.size()));
    }
    Sample s;
    s.participant_id = cells[0];
    if (s.participant_id.empty()) throw ParseError(row, "participant_id is empty");
    const auto altitude = parse_altitude(cells[1]);
    if (!altitude) {
      throw ParseError(row, "altitude '" + cells[1] + "' is not one of sea|alt");
    }
    s.altitude = *altitude;
    s.week = parse_week(cells[2], row);
    const auto label = parse_label(cells[3]);
    if (!label) {
      throw ParseError(row, "label '" + cells[3] + "' is not one of control|rhepo");
    }
    s.label = *label;
    for (std::size_t i = 0; i < kMeasuredCount; ++i) {
      const auto& cell = cells[kFixedColumns + i];
      if (cell.empty()) continue;
      s.profile.set(static_cast<Parameter>(i),
                    parse_number(cell, header[kFixedColumns + i], row));
    }
    if (auto problem = check_profile(s.profile)) {
      throw ParseError(row, *problem);
    }
    auto [it, inserted] = seen.emplace(
        std::make_tuple(s.participant_id, s.altitude, s.week), row);
    if (!inserted) {
      throw IntegrityError("row " + std::to_string(row) + ": duplicate sample (" +
                           s.participant_id + ", " + std::string(to_string(s.altitude)) +
                           ", " + std::to_string(s.week) + "), first seen on row " +
                           std::to_string(it->second));
    }
    samples.push_back(std::move(s));
  }
  return Cohort(std::move(samples), std::move(provenance));
}

void write_cohort_csv(std::ostream& out, const Cohort& cohort) {
  const auto& header = cohort_csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << '\n';
  for (const Sample& s : cohort.samples()) {
    out << quote_if_needed(s.participant_id) << ',' << to_string(s.altitude) << ','
        << s.week << ',' << to_string(s.label);
    for (Parameter p : measured_parameters()) {
      out << ',';
      if (auto v = s.profile.get(p)) out << format_double(*v);
    }
    out << '\n';
  }
}

}  // namespace epodetect
