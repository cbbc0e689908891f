#pragma once

#include <stdexcept>
#include <string>

namespace kemeny_lab {

enum class ErrorKind {
  ParseError,
  NotStochastic,
  NotRegular,
  SingularMatrix,
  SingularSystem,
  DimensionMismatch,
  UnsupportedInMode,
  NoConvergence,
  SpectrumInvalid,
  CensoringExceeded,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotStochastic: return "NotStochastic";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnsupportedInMode: return "UnsupportedInMode";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SpectrumInvalid: return "SpectrumInvalid";
    case ErrorKind::CensoringExceeded: return "CensoringExceeded";
  }
  return "UnknownError";
}

/// Library-wide error type. `kind()` identifies the failure class so callers
/// (notably the CLI) can map it to a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace kemeny_lab
