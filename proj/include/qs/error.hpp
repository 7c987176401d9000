#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qs {

/// Stable error identifiers. The string form is part of the CLI output contract.
enum class ErrorCode {
  SingularMatrix,
  DimensionMismatch,
  NotTriangular,
  NonPositiveDiagonal,
  UnsupportedFormat,
  ParseError,
  InvalidArgument,
  InternalError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qs
