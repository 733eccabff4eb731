#include "chernweil/error.hpp"

namespace chernweil {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NotInvertibleOnChart: return "NotInvertibleOnChart";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::TupleNotInNerve: return "TupleNotInNerve";
    case ErrorCode::MissingTransition: return "MissingTransition";
    case ErrorCode::MissingRestriction: return "MissingRestriction";
    case ErrorCode::MissingGreenStructure: return "MissingGreenStructure";
    case ErrorCode::MissingComponent: return "MissingComponent";
    case ErrorCode::WitnessShapeMismatch: return "WitnessShapeMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::GluingViolation: return "GluingViolation";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace chernweil
