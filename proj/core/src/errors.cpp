#include "painleve/errors.hpp"

namespace painleve {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::PoleOfGamma: return "PoleOfGamma";
    case ErrorKind::DegenerateProduct: return "DegenerateProduct";
    case ErrorKind::OutOfRegime: return "OutOfRegime";
    case ErrorKind::NonRealCorrection: return "NonRealCorrection";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::AtPole: return "AtPole";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::FitIllConditioned: return "FitIllConditioned";
    case ErrorKind::MaxPolesExceeded: return "MaxPolesExceeded";
    case ErrorKind::EmptyAfterMask: return "EmptyAfterMask";
    case ErrorKind::InsufficientCells: return "InsufficientCells";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace painleve
