#include "chaosbox/error.hpp"

namespace chaosbox {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::DegenerateOrbit: return "DegenerateOrbit";
    case ErrorKind::DerivativeZero: return "DerivativeZero";
    case ErrorKind::GenerationStall: return "GenerationStall";
    case ErrorKind::NumericGuardTripped: return "NumericGuardTripped";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace chaosbox
