#pragma once

#include <stdexcept>
#include <string>

namespace mmw {

enum class ErrorKind {
  DegenerateModel,
  NonPositiveDefinite,
  WrongFlavor,
  ZeroPolynomial,
  SingularSystem,
  FullRank,
  AmbiguousNullspace,
  UncoupledFamily,
  ParityViolation,
  BranchCountMismatch,
  ComplexFrequency,
  ZeroSpeed,
  MixedFrequency,
  UnsupportedPair,
  ResidualTooLarge,
  DeadModeActivated,
};

const char *to_string(ErrorKind kind);

// All library failures are reported through this one type; callers switch on kind().
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

inline const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::DegenerateModel: return "degenerate model";
  case ErrorKind::NonPositiveDefinite: return "non-positive-definite";
  case ErrorKind::WrongFlavor: return "wrong flavor";
  case ErrorKind::ZeroPolynomial: return "zero polynomial";
  case ErrorKind::SingularSystem: return "singular system";
  case ErrorKind::FullRank: return "full rank";
  case ErrorKind::AmbiguousNullspace: return "ambiguous nullspace";
  case ErrorKind::UncoupledFamily: return "uncoupled family";
  case ErrorKind::ParityViolation: return "parity violation";
  case ErrorKind::BranchCountMismatch: return "branch count mismatch";
  case ErrorKind::ComplexFrequency: return "complex frequency";
  case ErrorKind::ZeroSpeed: return "zero speed";
  case ErrorKind::MixedFrequency: return "mixed frequency";
  case ErrorKind::UnsupportedPair: return "unsupported pair";
  case ErrorKind::ResidualTooLarge: return "residual too large";
  case ErrorKind::DeadModeActivated: return "dead mode activated";
  }
  return "unknown";
}

} // namespace mmw
