#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chaosbox {

enum class ErrorKind {
  ParamOutOfRange,
  NonFiniteState,
  DegenerateOrbit,
  DerivativeZero,
  GenerationStall,
  NumericGuardTripped,
  NotBijective,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the library is reported through this one exception type;
// callers switch on kind() (the CLI maps it onto exit codes).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace chaosbox
