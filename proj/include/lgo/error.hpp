#pragma once

#include <stdexcept>
#include <string>

namespace lgo {

enum class ErrorCode {
  kConductorMismatch,
  kDivisionByZero,
  kSyntaxError,
  kMixedQuadratic,
  kUnknownVariable,
  kArityMismatch,
  kDimensionMismatch,
  kNoGraphMonomial,
  kSingularMatrix,
  kNotQuasihomogeneous,
  kWeightOutOfRange,
  kNotInGraphGroup,
  kClosureCapExceeded,
  kNotASymmetry,
  kMissingJ,
  kNotInSL,
  kNotIsolated,
  kNonHomogeneous,
  kNotInGroup,
  kNonIntegerCharge,
  kPreconditionFailed,
  kInternal,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lgo
