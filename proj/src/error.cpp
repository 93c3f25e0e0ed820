#include "hasse/error.hpp"

namespace hasse {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SubstitutionNotLocal: return "SubstitutionNotLocal";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotAPthPower: return "NotAPthPower";
    case ErrorKind::EmptyPrecisionWindow: return "EmptyPrecisionWindow";
    case ErrorKind::InvalidGenerator: return "InvalidGenerator";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::ZeroOrUnitInput: return "ZeroOrUnitInput";
    case ErrorKind::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorKind::NotDistinguished: return "NotDistinguished";
    case ErrorKind::SeparabilitySearchExhausted: return "SeparabilitySearchExhausted";
    case ErrorKind::ImproperIdeal: return "ImproperIdeal";
    case ErrorKind::ContractionInconclusive: return "ContractionInconclusive";
    case ErrorKind::NotCentered: return "NotCentered";
    case ErrorKind::DerivativeVanishes: return "DerivativeVanishes";
    case ErrorKind::NotOrderOne: return "NotOrderOne";
    case ErrorKind::AllCoefficientsPthPowers: return "AllCoefficientsPthPowers";
    case ErrorKind::NoUnitCoefficient: return "NoUnitCoefficient";
    case ErrorKind::LevelExceedsContext: return "LevelExceedsContext";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace hasse
