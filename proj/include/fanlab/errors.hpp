#pragma once

#include <stdexcept>
#include <string>

namespace fanlab {

// Stable error identifiers. CLI maps Error to exit code 1 (negative result /
// rejected input) and anything else to 3 (internal).
enum class ErrorCode {
  ZeroVector,
  DependentInput,
  UnknownNode,
  BadDiagram,
  InvalidFan,
  InvalidDatum,
  ConeNotInFan,
  NotComplete,
  NotQFactorial,
  AmbiguousRay,
  NotQCartier,
  InvalidCurve,
  NotProjective,
  NotAWall,
  NotExtremal,
  Unsupported,
  OverlappingCones,
  Inconsistent,
  NotInD0,
  PreconditionFailed,
  UnknownName,
  BadParams,
  ParseError,
  SchemaError,
  Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fanlab
