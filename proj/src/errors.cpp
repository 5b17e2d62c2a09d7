#include "currents_lab/errors.hpp"

namespace currents_lab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kBasisMismatch: return "BasisMismatch";
    case ErrorCode::kIdentityElement: return "IdentityElement";
    case ErrorCode::kZeroCurrent: return "ZeroCurrent";
    case ErrorCode::kRankTooSmall: return "RankTooSmall";
    case ErrorCode::kValidationFailure: return "ValidationFailure";
    case ErrorCode::kNotStabilized: return "NotStabilized";
    case ErrorCode::kAllElliptic: return "AllElliptic";
    case ErrorCode::kParityPrecondition: return "ParityPrecondition";
    case ErrorCode::kUnknownExperiment: return "UnknownExperiment";
  }
  return "Unknown";
}

}  // namespace currents_lab
