#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tetra {

enum class ErrorKind {
  ShapeMismatch,
  NonFinite,
  InvalidArgument,
  NotHermitian,
  NotPSD,
  NotAContraction,
  NonCommuting,
  NotContractive,
  NotCoinvariant,
  SolveFailed,
  RestrictionLeak,
  ResolventSingular,
  NotPure,
  ModelMismatch,
  NotIsometryLike,
  NotInner,
  NotDegreeOne,
  NotIntertwining,
  NotUnitary,
  HypothesisViolated,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (and the CLI
// exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a residual-based precondition fails; keeps the offending value.
class ResidualError : public Error {
 public:
  ResidualError(ErrorKind kind, std::string subject, double residual, const std::string& what)
      : Error(kind, what), subject_(std::move(subject)), residual_(residual) {}

  const std::string& subject() const noexcept { return subject_; }
  double residual() const noexcept { return residual_; }

 private:
  std::string subject_;
  double residual_;
};

}  // namespace tetra
