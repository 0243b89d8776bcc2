#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace painleve {

enum class ErrorKind {
  InvalidArgument,
  PoleOfGamma,
  DegenerateProduct,
  OutOfRegime,
  NonRealCorrection,
  NoConvergence,
  DegreeTooSmall,
  AtPole,
  StepUnderflow,
  FitIllConditioned,
  MaxPolesExceeded,
  EmptyAfterMask,
  InsufficientCells,
  SchemaError,
};

std::string_view to_string(ErrorKind kind);

/// Numerical or contract failure raised by every module of the library.
/// `kind()` is stable and is what the CLI prints on stderr.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace painleve
