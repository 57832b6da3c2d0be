#include "strata/error.hpp"

namespace strata {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::CodeOutOfRange: return "CodeOutOfRange";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::CharacteristicTwo: return "CharacteristicTwo";
    case ErrorCode::ExactnessHorizon: return "ExactnessHorizon";
    case ErrorCode::MissingParam: return "MissingParam";
    case ErrorCode::NoThresholdInWindow: return "NoThresholdInWindow";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
  }
  return "Unknown";
}

}  // namespace strata
