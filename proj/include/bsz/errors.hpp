#pragma once

#include <stdexcept>
#include <string>

namespace bsz {

enum class ErrorCode {
  InvalidInput,
  InvalidDegree,
  ZeroPolynomial,
  RootNearTorus,
  InsufficientMoments,
  MomentDivergence,
  NonPositiveDensity,
  NotPositive,
  DegenerateForm,
  MatrixConditionFails,
  DNotAdmissible,
  GcdUnstable,
  NotFactorable,
  CommonFactor,
  NoConvergence,
  NotSelfReflective,
  ZOnlyFactor,
  NotGdv,
  DegenerateSlice,
  CertificateFailed,
  FitResidualTooLarge,
};

const char* error_name(ErrorCode code);

// Command-line exit class: 1 well-posed negative answer, 2 invalid input,
// 3 numerical failure.
inline int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidDegree:
    case ErrorCode::ZeroPolynomial:
    case ErrorCode::InsufficientMoments:
    case ErrorCode::NotPositive:
    case ErrorCode::NonPositiveDensity:
    case ErrorCode::CommonFactor:
    case ErrorCode::ZOnlyFactor:
      return 2;
    case ErrorCode::MatrixConditionFails:
    case ErrorCode::NotFactorable:
    case ErrorCode::NotGdv:
    case ErrorCode::NotSelfReflective:
    case ErrorCode::DNotAdmissible:
      return 1;
    default:
      return 3;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double value = 0.0)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code), value_(value) {}

  ErrorCode code() const { return code_; }
  // Residual or margin attached to the failure, when one is meaningful.
  double value() const { return value_; }

 private:
  ErrorCode code_;
  double value_;
};

}  // namespace bsz
