#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sisfront {

enum class ErrorCode {
  AdmissibilityViolation,
  NonPositiveParameter,
  BadEpsilon,
  NegativeDensity,
  ZeroDiffusivity,
  SingularDenominator,
  SpeedBelowBound,
  SigmaNotZero,
  StepUnderflow,
  NonFiniteState,
  NotASaddle,
  NoConnection,
  EigenstructureChanged,
  SlopeOutOfInterval,
  OutsideTriangle,
  CFLViolation,
  NonFiniteField,
  InterfaceLost,
  NoOverlap,
  InvalidArgument,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Broad grouping used for process exit codes.
enum class ErrorClass { Validation, Numerical, Internal };

ErrorClass classify(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct ValidationIssue {
  ErrorCode code;
  std::string message;
};

/// Raised by parameter validation. Carries every violated constraint, not
/// just the first one found; code() reports the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);

  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

}  // namespace sisfront
