#include "kzq/error.hpp"

namespace kzq {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Internal: return "Internal";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownSchurIndex: return "UnknownSchurIndex";
    case ErrorCode::DataConflict: return "DataConflict";
    case ErrorCode::NotIndexTwo: return "NotIndexTwo";
    case ErrorCode::NonCommutingLadder: return "NonCommutingLadder";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::OrderBoundExceeded: return "OrderBoundExceeded";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case ErrorCode::NonCommutingSquare: return "NonCommutingSquare";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int Error::exit_code() const noexcept {
  switch (code_) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownName:
      return 2;
    case ErrorCode::UnknownSchurIndex: return 3;
    case ErrorCode::DataConflict: return 4;
    case ErrorCode::NotIndexTwo: return 5;
    case ErrorCode::NonCommutingLadder: return 6;
    case ErrorCode::NotAutomorphism: return 7;
    default: return 1;
  }
}

namespace {

std::string describe(std::size_t position, const std::string& expected,
                     const std::string& input) {
  std::string msg = "parse error at position " + std::to_string(position) +
                    ": expected " + expected;
  if (position < input.size())
    msg += ", found '" + std::string(1, input[position]) + "'";
  else
    msg += ", found end of input";
  return msg;
}

}  // namespace

ParseError::ParseError(std::size_t position, const std::string& expected,
                       const std::string& input)
    : Error(ErrorCode::ParseError, describe(position, expected, input)),
      position_(position),
      expected_(expected) {}

}  // namespace kzq
