#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gda {

enum class ErrorCode {
  // grading
  NotASubgroup,
  // scalars
  ZeroElement,
  // algebra
  NotRootOfUnity,
  InfiniteIndexRadical,
  NonSquareIndex,
  DegreeOutsideGammaE,
  ZeroCoefficient,
  // gmatrix / bruhat / dieudonne
  NotDegreeZero,
  WrongDegree,
  SamePosition,
  Singular,
  NotHomogeneous,
  // sk
  ExceptionalF2Config,
  OrderTooSmall,
  InfiniteT0Star,
  // oracle
  SizeBudgetExceeded,
  InfiniteCoefficientField,
  // input handling
  ParseError,
  ValidationError,
};

std::string_view error_code_name(ErrorCode code);

/// Parse and validation failures map to exit code 2, everything else to 1.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace gda
