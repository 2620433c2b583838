#pragma once

#include <stdexcept>
#include <string>

namespace orbitcone {

enum class ErrorCode {
  UnsupportedAlgebra,
  DimensionTooLarge,
  DimensionMismatch,
  DegenerateForm,
  EmptyFamily,
  InsufficientRadii,
  ZeroPoint,
  OddDimension,
  BudgetTooSmall,
  NonCommuting,
  BadPartition,
  ParseError,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// that callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedAlgebra: return "UnsupportedAlgebra";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::InsufficientRadii: return "InsufficientRadii";
    case ErrorCode::ZeroPoint: return "ZeroPoint";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace orbitcone
