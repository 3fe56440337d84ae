#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frhs {

enum class ErrorCode {
  IndexOutOfRange,
  AntisymmetryViolation,
  JacobiViolation,
  NotSubalgebra,
  NotInvariant,
  InvalidModel,
  DomainError,
  NearZeroVector,
  DegenerateFlag,
  ThetaNearZero,
  NotNaturallyReductive,
  UnknownId,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the workbench; the code says which contract failed.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace frhs
