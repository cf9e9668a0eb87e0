#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zsl {

enum class ErrorCode {
  kDimensionMismatch,
  kNonFinite,
  kNegativeLambda,
  kTooFewColumns,
  kIndexOutOfRange,
  kZeroPoint,
  kSameIndex,
  kNonConvexDirection,
  kEmptyNonactive,
  kNoEligibleIndex,
  kNotConverged,
  kInvalidArgument,
  kParse,
  kNonPositiveEntry,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported as zsl::Error; code() identifies the
// validation or precondition that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zsl
