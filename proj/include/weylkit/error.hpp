#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weylkit {

enum class ErrorKind {
  InputError,
  ZeroDivisor,
  ZeroOperator,
  NotInIdealizer,
  InconsistentProjection,
  NonLaurentCoefficient,
  BoundViolation,
  IndependenceViolation,
  LeadingTermViolation,
  FiltrationViolation,
  CorrespondenceViolation,
  TranslationMismatch,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::InputError: return "InputError";
  case ErrorKind::ZeroDivisor: return "ZeroDivisor";
  case ErrorKind::ZeroOperator: return "ZeroOperator";
  case ErrorKind::NotInIdealizer: return "NotInIdealizer";
  case ErrorKind::InconsistentProjection: return "InconsistentProjection";
  case ErrorKind::NonLaurentCoefficient: return "NonLaurentCoefficient";
  case ErrorKind::BoundViolation: return "BoundViolation";
  case ErrorKind::IndependenceViolation: return "IndependenceViolation";
  case ErrorKind::LeadingTermViolation: return "LeadingTermViolation";
  case ErrorKind::FiltrationViolation: return "FiltrationViolation";
  case ErrorKind::CorrespondenceViolation: return "CorrespondenceViolation";
  case ErrorKind::TranslationMismatch: return "TranslationMismatch";
  }
  return "Unknown";
}

/// Property violations are proved-true statements failing at runtime; they
/// indicate a bug, not bad input.
constexpr bool is_violation(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::BoundViolation:
  case ErrorKind::IndependenceViolation:
  case ErrorKind::LeadingTermViolation:
  case ErrorKind::FiltrationViolation:
  case ErrorKind::CorrespondenceViolation:
  case ErrorKind::TranslationMismatch:
    return true;
  default:
    return false;
  }
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

struct Violation {
  ErrorKind kind;
  std::string message;
};

} // namespace weylkit
