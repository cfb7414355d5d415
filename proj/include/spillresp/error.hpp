#pragma once

#include <stdexcept>
#include <string>

namespace spillresp {

enum class ErrorCode {
  EmptySet,
  ProbabilityMass,
  DimensionMismatch,
  NegativeParameter,
  InsufficientData,
  NonPositiveVolume,
  ParseError,
  SchemaError,
  CrossRefError,
  IoError,
  Infeasible,
  Unbounded,
  TooLarge,
  IntegralityError,
  ObjectiveMismatch,
  OrderingViolation,
  AllRunsFailed,
  InvariantViolation,
  InvalidArgument,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace spillresp
