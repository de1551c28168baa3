#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bnls {

enum class ErrorKind {
  ParameterOutOfRange,
  InvalidGrid,
  LengthMismatch,
  GridMismatch,
  MassDrift,
  ZeroMass,
  DegenerateBundle,
  MassAboveThreshold,
  ConfigNotFound,
  ConfigParse,
  FieldFormat,
  NonConvergence,
  SafeguardExhausted,
  TruncationSensitivity,
  VerificationFailed,
};

/// Stable machine-readable name, e.g. "mass-above-threshold".
std::string_view kind_name(ErrorKind kind);

/// Process exit code for the CLI: 2 config, 3 domain, 4 numerical
/// non-convergence, 5 verification failure.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bnls
