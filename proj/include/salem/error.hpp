#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace salem {

// Every failure the library reports carries one of these codes so callers
// (and the CLI) can branch on the kind without parsing messages.
enum class ErrorCode {
  SumMismatch,
  NotCoprime,
  TooFewVariables,
  NonPositiveCoefficient,
  LengthMismatch,
  EmptyFamily,
  NoValidDigitCap,
  BudgetExceeded,
  InvalidArgument,
  ResidueOutOfRange,
  ParametersTooSmall,
  BlockEmpty,
  CapExceeded,
  DepthExceeded,
  TooFewBands,
  Degenerate,
  DimensionMismatch,
  QuadratureFailure,
  BadTruncation,
  DivergentIntegral,
  GridOutOfDomain,
  BadSchedule,
  LengthExceedsSchedule,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace salem
