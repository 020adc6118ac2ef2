#pragma once

#include <stdexcept>
#include <string>

namespace cycdesc {

/// Error categories. The numeric values are the CLI exit codes: 1x parse,
/// 2x algebra, 3x descent preconditions, 4x verification failures.
enum class ErrorCode : int {
  Syntax = 10,
  UnresolvedReference = 11,
  IllDefinedMorphism = 12,
  InvalidDeclaration = 13,

  DivisionByZero = 20,
  FieldMismatch = 21,
  RingMismatch = 22,
  UnsupportedShape = 23,
  UndecidedPrimality = 24,
  NotMinimal = 25,
  NonExactDivision = 26,
  NotContaining = 27,
  SaturationLimit = 28,
  InvalidArgument = 29,

  NotUniversallyGeneralizing = 30,
  EmptyFiber = 31,
  NotClosedImmersion = 32,

  VerificationFailure = 40,
  GoldenMismatch = 41,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cycdesc
