#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace currents_lab {

enum class ErrorCode {
  kInvalidArgument,
  kParseError,
  kBasisMismatch,
  kIdentityElement,
  kZeroCurrent,
  kRankTooSmall,
  kValidationFailure,
  kNotStabilized,
  kAllElliptic,
  kParityPrecondition,
  kUnknownExperiment,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the literal parsers; carries the 0-based offset of the offending
// character in the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorCode::kParseError,
              what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace currents_lab
