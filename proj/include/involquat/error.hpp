#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace involquat {

enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  NoAutomorphism,
  InvalidField,
  SizeMismatch,
  InvalidInvolution,
  NotSquareCentral,
  NotIdempotent,
  NotMetabolic,
  NotHyperbolic,
  ScalarInput,
  ExceptionalCase,
  PreconditionViolated,
  NotSymmetric,
  SquareNotCentral,
  FieldTooLarge,
  Infeasible,
  Malformed,
  InternalCheckFailed,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NoAutomorphism: return "NoAutomorphism";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::InvalidInvolution: return "InvalidInvolution";
    case ErrorCode::NotSquareCentral: return "NotSquareCentral";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotMetabolic: return "NotMetabolic";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::ScalarInput: return "ScalarInput";
    case ErrorCode::ExceptionalCase: return "ExceptionalCase";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::SquareNotCentral: return "SquareNotCentral";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::InternalCheckFailed: return "InternalCheckFailed";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code and
/// a short detail string (for PreconditionViolated: the name of the failed
/// relation, e.g. "ue=0").
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail)
      : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
        code_(code),
        detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, std::string detail = {}) {
  throw Error(code, std::move(detail));
}

inline void require(bool condition, ErrorCode code, std::string_view detail) {
  if (!condition) fail(code, std::string(detail));
}

// Internal self-certification: a construction produced something that does
// not satisfy its own post-condition.
inline void ensure(bool condition, std::string_view what) {
  if (!condition) fail(ErrorCode::InternalCheckFailed, std::string(what));
}

}  // namespace involquat
