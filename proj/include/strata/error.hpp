#ifndef STRATA_ERROR_HPP
#define STRATA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace strata {

enum class ErrorCode {
  NotPrime,
  CapacityExceeded,
  DivisionByZero,
  FieldMismatch,
  CodeOutOfRange,
  BadRange,
  CharacteristicTwo,
  ExactnessHorizon,
  MissingParam,
  NoThresholdInWindow,
  ShapeMismatch,
  SchemaViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain error raised by every module; the CLI maps it to exit status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace strata

#endif  // STRATA_ERROR_HPP
