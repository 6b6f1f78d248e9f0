#include "lgo/error.hpp"

namespace lgo {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kConductorMismatch: return "ConductorMismatch";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kMixedQuadratic: return "MixedQuadraticError";
    case ErrorCode::kUnknownVariable: return "UnknownVariable";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNoGraphMonomial: return "NoGraphMonomial";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kNotQuasihomogeneous: return "NotQuasihomogeneous";
    case ErrorCode::kWeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::kNotInGraphGroup: return "NotInGraphGroup";
    case ErrorCode::kClosureCapExceeded: return "ClosureCapExceeded";
    case ErrorCode::kNotASymmetry: return "NotASymmetry";
    case ErrorCode::kMissingJ: return "MissingJ";
    case ErrorCode::kNotInSL: return "NotInSL";
    case ErrorCode::kNotIsolated: return "NotIsolated";
    case ErrorCode::kNonHomogeneous: return "NonHomogeneous";
    case ErrorCode::kNotInGroup: return "NotInGroup";
    case ErrorCode::kNonIntegerCharge: return "NonIntegerCharge";
    case ErrorCode::kPreconditionFailed: return "PreconditionFailed";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

}  // namespace lgo
