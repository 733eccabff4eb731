#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chernweil {

enum class ErrorCode {
  ZeroDenominator,
  NotInvertibleOnChart,
  ChartMismatch,
  DegreeMismatch,
  IndexOutOfRange,
  TupleNotInNerve,
  MissingTransition,
  MissingRestriction,
  MissingGreenStructure,
  MissingComponent,
  WitnessShapeMismatch,
  ShapeMismatch,
  GluingViolation,
  DimensionTooLarge,
  ParseError,
  ValidationError,
  UnknownCommand,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// message names the offending object (chart, tuple, matrix, line).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace chernweil
