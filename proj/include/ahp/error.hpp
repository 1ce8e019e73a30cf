#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ahp {

enum class ErrorCode {
  // hierarchy / indicator loading
  ParseError,
  IoError,
  DuplicateId,
  ImportanceProductMismatch,
  EmptyLevel,
  UnknownColumn,
  MissingColumn,
  UnknownAlternative,
  MissingAlternative,
  NegativeValue,
  PercentOutOfRange,
  InvalidConfig,
  // elicitation
  EmptyList,
  NonPositiveImportance,
  AllValuesZero,
  TooFewAlternatives,
  EntryOutOfScale,
  // crisp kernel
  NotSquare,
  NonPositiveEntry,
  ReciprocityViolation,
  DiagonalNotOne,
  ZeroWeight,
  DimensionMismatch,
  AlternativeSetMismatch,
  // fuzzy kernel
  NonPositiveComponent,
  AllZero,
  // analysis
  DiagonalPerturbation,
  NonPositiveFactor,
  // reporting / run
  UnsupportedFormat,
  ConsistencyGateFailure,
  InvariantViolation,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::ImportanceProductMismatch: return "ImportanceProductMismatch";
    case ErrorCode::EmptyLevel: return "EmptyLevel";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::UnknownAlternative: return "UnknownAlternative";
    case ErrorCode::MissingAlternative: return "MissingAlternative";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::PercentOutOfRange: return "PercentOutOfRange";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::NonPositiveImportance: return "NonPositiveImportance";
    case ErrorCode::AllValuesZero: return "AllValuesZero";
    case ErrorCode::TooFewAlternatives: return "TooFewAlternatives";
    case ErrorCode::EntryOutOfScale: return "EntryOutOfScale";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::ReciprocityViolation: return "ReciprocityViolation";
    case ErrorCode::DiagonalNotOne: return "DiagonalNotOne";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AlternativeSetMismatch: return "AlternativeSetMismatch";
    case ErrorCode::NonPositiveComponent: return "NonPositiveComponent";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::DiagonalPerturbation: return "DiagonalPerturbation";
    case ErrorCode::NonPositiveFactor: return "NonPositiveFactor";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::ConsistencyGateFailure: return "ConsistencyGateFailure";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an `ahp::Error` carrying a
/// machine-checkable code alongside the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace ahp
