#pragma once

#include <stdexcept>
#include <string>

namespace kzq {

/// Failure categories. The numeric values of the CLI-visible ones are the
/// process exit codes of `kzq`.
enum class ErrorCode {
  Internal = 1,
  ParseError = 2,
  UnknownSchurIndex = 3,
  DataConflict = 4,
  NotIndexTwo = 5,
  NonCommutingLadder = 6,
  NotAutomorphism = 7,
  // Not surfaced with a dedicated exit code; the CLI reports them as 1.
  OrderBoundExceeded = 10,
  DegreeMismatch,
  EnumerationBudgetExceeded,
  DivisionByZero,
  NotCoprime,
  NotPrime,
  UnknownName,
  NotInjective,
  NonIntegralCoefficient,
  NonCommutingSquare,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Exit status the CLI uses for this error.
  int exit_code() const noexcept;

 private:
  ErrorCode code_;
};

/// Parse failure with the byte offset into the input and what was expected.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& expected,
             const std::string& input);

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace kzq
