#pragma once

#include <stdexcept>
#include <string>

namespace qalg {

// Every failure mode the kernel can signal. CLI and JSON output report these
// by name, so the enumerator spelling is part of the external interface.
enum class ErrorCode {
  DivisionByZero,
  InvalidArgument,
  NotScalarClosed,
  StepBudgetExceeded,
  NegativePowerOfNonInvertible,
  NotInvertible,
  WrongKind,
  ZeroElement,
  NotMonotone,
  InternalDisagreement,
  NotStabilizing,
  NotInvertibleShape,
  NotTriangular,
  NotHomogeneous,
  BoxTooLarge,
  UnverifiedWitness,
  IdentityFails,
  SyntaxError,
  DuplicateGenerator,
  UnknownSymbol,
  ValidationFailed,
};

inline const char* errorName(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotScalarClosed: return "NotScalarClosed";
    case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::NegativePowerOfNonInvertible: return "NegativePowerOfNonInvertible";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::InternalDisagreement: return "InternalDisagreement";
    case ErrorCode::NotStabilizing: return "NotStabilizing";
    case ErrorCode::NotInvertibleShape: return "NotInvertibleShape";
    case ErrorCode::NotTriangular: return "NotTriangular";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::BoxTooLarge: return "BoxTooLarge";
    case ErrorCode::UnverifiedWitness: return "UnverifiedWitness";
    case ErrorCode::IdentityFails: return "IdentityFails";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateGenerator: return "DuplicateGenerator";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
  }
  return "Unknown";
}

class QalgError : public std::runtime_error {
 public:
  QalgError(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(errorName(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw QalgError(code, msg);
}

}  // namespace qalg
