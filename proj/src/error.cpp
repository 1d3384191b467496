#include "sisfront/error.hpp"

namespace sisfront {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AdmissibilityViolation: return "AdmissibilityViolation";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::BadEpsilon: return "BadEpsilon";
    case ErrorCode::NegativeDensity: return "NegativeDensity";
    case ErrorCode::ZeroDiffusivity: return "ZeroDiffusivity";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::SpeedBelowBound: return "SpeedBelowBound";
    case ErrorCode::SigmaNotZero: return "SigmaNotZero";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::NotASaddle: return "NotASaddle";
    case ErrorCode::NoConnection: return "NoConnection";
    case ErrorCode::EigenstructureChanged: return "EigenstructureChanged";
    case ErrorCode::SlopeOutOfInterval: return "SlopeOutOfInterval";
    case ErrorCode::OutsideTriangle: return "OutsideTriangle";
    case ErrorCode::CFLViolation: return "CFLViolation";
    case ErrorCode::NonFiniteField: return "NonFiniteField";
    case ErrorCode::InterfaceLost: return "InterfaceLost";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

ErrorClass classify(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AdmissibilityViolation:
    case ErrorCode::NonPositiveParameter:
    case ErrorCode::BadEpsilon:
    case ErrorCode::NegativeDensity:
    case ErrorCode::SpeedBelowBound:
    case ErrorCode::SigmaNotZero:
    case ErrorCode::SlopeOutOfInterval:
    case ErrorCode::OutsideTriangle:
    case ErrorCode::InvalidArgument:
      return ErrorClass::Validation;
    case ErrorCode::ZeroDiffusivity:
    case ErrorCode::SingularDenominator:
    case ErrorCode::StepUnderflow:
    case ErrorCode::NonFiniteState:
    case ErrorCode::NotASaddle:
    case ErrorCode::NoConnection:
    case ErrorCode::EigenstructureChanged:
    case ErrorCode::CFLViolation:
    case ErrorCode::NonFiniteField:
    case ErrorCode::InterfaceLost:
    case ErrorCode::NoOverlap:
      return ErrorClass::Numerical;
    case ErrorCode::Io:
      return ErrorClass::Internal;
  }
  return ErrorClass::Internal;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(issue.code)) + " (" + issue.message + ")";
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error(issues.empty() ? ErrorCode::InvalidArgument : issues.front().code,
            "parameter validation failed: " + join_issues(issues)),
      issues_(std::move(issues)) {}

}  // namespace sisfront
