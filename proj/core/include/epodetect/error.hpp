#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace epodetect {

enum class ErrorCode {
  Domain,
  Parse,
  Integrity,
  Imputation,
  Io,
  Usage,
};

/// Stable identifier printed in diagnostics, e.g. "E_PARSE".
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message)
      : Error(ErrorCode::Domain, message) {}
};

/// Malformed input. `row` is the 1-based line number in the source
/// (the header is line 1), or 0 when the error is not tied to a row.
class ParseError : public Error {
 public:
  ParseError(std::size_t row, const std::string& message);

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& message)
      : Error(ErrorCode::Integrity, message) {}
};

class ImputationError : public Error {
 public:
  explicit ImputationError(const std::string& message)
      : Error(ErrorCode::Imputation, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorCode::Io, message) {}
};

}  // namespace epodetect
