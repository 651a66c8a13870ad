#include "epodetect/error.hpp"

namespace epodetect {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain:
      return "E_DOMAIN";
    case ErrorCode::Parse:
      return "E_PARSE";
    case ErrorCode::Integrity:
      return "E_INTEGRITY";
    case ErrorCode::Imputation:
      return "E_IMPUTE";
    case ErrorCode::Io:
      return "E_IO";
    case ErrorCode::Usage:
      return "E_USAGE";
  }
  return "E_UNKNOWN";
}

ParseError::ParseError(std::size_t row, const std::string& message)
    : Error(ErrorCode::Parse,
            row == 0 ? message : "row " + std::to_string(row) + ": " + message),
      row_(row) {}

}  // namespace epodetect
