#pragma once

#include <stdexcept>
#include <string>

namespace schemelab {

enum class Err {
  NotReflexive,
  NotSymmetric,
  EmptyClass,
  InconsistentIntersectionNumbers,
  SizeCapExceeded,
  InvalidParameters,
  VertexOutOfRange,
  EigenspaceSeparationFailure,
  NegativeKreinParameter,
  ClosureNotReached,
  ResidualTooLarge,
  IrreducibilitySplitFailed,
  EmptyProfile,
  IoError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NotReflexive: return "NotReflexive";
    case Err::NotSymmetric: return "NotSymmetric";
    case Err::EmptyClass: return "EmptyClass";
    case Err::InconsistentIntersectionNumbers: return "InconsistentIntersectionNumbers";
    case Err::SizeCapExceeded: return "SizeCapExceeded";
    case Err::InvalidParameters: return "InvalidParameters";
    case Err::VertexOutOfRange: return "VertexOutOfRange";
    case Err::EigenspaceSeparationFailure: return "EigenspaceSeparationFailure";
    case Err::NegativeKreinParameter: return "NegativeKreinParameter";
    case Err::ClosureNotReached: return "ClosureNotReached";
    case Err::ResidualTooLarge: return "ResidualTooLarge";
    case Err::IrreducibilitySplitFailed: return "IrreducibilitySplitFailed";
    case Err::EmptyProfile: return "EmptyProfile";
    case Err::IoError: return "IoError";
  }
  return "UnknownError";
}

class SchemeError : public std::runtime_error {
 public:
  SchemeError(Err code, const std::string& message)
      : std::runtime_error(std::string(err_name(code)) + ": " + message),
        code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& message) {
  throw SchemeError(code, message);
}

}  // namespace schemelab
