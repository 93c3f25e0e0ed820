#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hasse {

enum class ErrorKind {
  DivisionByZero,
  DimensionMismatch,
  SubstitutionNotLocal,
  NotAUnit,
  NotAPthPower,
  EmptyPrecisionWindow,
  InvalidGenerator,
  PrecisionExhausted,
  ZeroOrUnitInput,
  PrecisionTooLow,
  NotDistinguished,
  SeparabilitySearchExhausted,
  ImproperIdeal,
  ContractionInconclusive,
  NotCentered,
  DerivativeVanishes,
  NotOrderOne,
  AllCoefficientsPthPowers,
  NoUnitCoefficient,
  LevelExceedsContext,
  ParseError,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind);

// Every domain failure in the library is reported through this type; the
// kind is what callers (and the CLI's structured error output) dispatch on.
class MathError : public std::runtime_error {
 public:
  MathError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hasse
