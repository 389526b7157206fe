#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kotaro {

enum class ErrorCode {
  NDegenerate,
  BadNeighborCount,
  DegenerateGeometry,
  SingleClass,
  DimensionMismatch,
  NonFinite,
  ShapeMismatch,
  RejectionBudgetExceeded,
  LengthMismatch,
  InvalidLabel,
  ClassAbsent,
  UndefinedMetric,
  BadK,
  TooFewMinority,
  FoldFailed,
  ParseError,
  MultipleNegativeValues,
  NonNumericFeature,
  IoError,
  FormatVersionMismatch,
  NotTwoDimensional,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (CLI, Python bindings) can branch on the kind without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kotaro
