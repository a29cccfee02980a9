#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mbstat {

enum class ErrorCode {
  EmptyInput,
  MalformedInput,
  NonPositivePrice,
  NonPositiveVolume,
  NonUniformSpacing,
  DuplicateTimestamp,
  ValueMismatch,
  EmptyWindow,
  LagNotOnGrid,
  MissingHistory,
  LengthMismatch,
  NonPositiveInvestment,
  NonPositiveInput,
  UnnormalizedWeights,
  DegenerateDenominator,
  InvalidConfig,
  IdentityViolation,
  GridMismatch,
  NonFiniteResult,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::NonPositivePrice: return "NonPositivePrice";
    case ErrorCode::NonPositiveVolume: return "NonPositiveVolume";
    case ErrorCode::NonUniformSpacing: return "NonUniformSpacing";
    case ErrorCode::DuplicateTimestamp: return "DuplicateTimestamp";
    case ErrorCode::ValueMismatch: return "ValueMismatch";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::LagNotOnGrid: return "LagNotOnGrid";
    case ErrorCode::MissingHistory: return "MissingHistory";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonPositiveInvestment: return "NonPositiveInvestment";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::UnnormalizedWeights: return "UnnormalizedWeights";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NonFiniteResult: return "NonFiniteResult";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message is prefixed with the code name so CLI diagnostics name the rule.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mbstat
