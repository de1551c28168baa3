#include "bnls/error.hpp"

namespace bnls {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParameterOutOfRange: return "parameter-out-of-range";
    case ErrorKind::InvalidGrid: return "invalid-grid";
    case ErrorKind::LengthMismatch: return "length-mismatch";
    case ErrorKind::GridMismatch: return "grid-mismatch";
    case ErrorKind::MassDrift: return "mass-drift";
    case ErrorKind::ZeroMass: return "zero-mass";
    case ErrorKind::DegenerateBundle: return "degenerate-bundle";
    case ErrorKind::MassAboveThreshold: return "mass-above-threshold";
    case ErrorKind::ConfigNotFound: return "config-not-found";
    case ErrorKind::ConfigParse: return "config-parse";
    case ErrorKind::FieldFormat: return "field-format";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::SafeguardExhausted: return "safeguard-exhausted";
    case ErrorKind::TruncationSensitivity: return "truncation-sensitivity";
    case ErrorKind::VerificationFailed: return "verification-failed";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigNotFound:
    case ErrorKind::ConfigParse:
    case ErrorKind::FieldFormat:
      return 2;
    case ErrorKind::NonConvergence:
    case ErrorKind::SafeguardExhausted:
    case ErrorKind::TruncationSensitivity:
      return 4;
    case ErrorKind::VerificationFailed:
      return 5;
    default:
      return 3;
  }
}

}  // namespace bnls
