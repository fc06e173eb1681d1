#pragma once

#include <stdexcept>
#include <string>

namespace narayana {

enum class ErrorKind {
  Domain,
  Precondition,
  PrecisionExhausted,
  Ambiguity,
  NonConvergence,
  Certification,
  EpsilonNonPositive,
  DigitOutOfRange,
  NonReducedFraction,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Precondition: return "precondition violation";
    case ErrorKind::PrecisionExhausted: return "precision exhausted";
    case ErrorKind::Ambiguity: return "ambiguous result";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::Certification: return "certification failure";
    case ErrorKind::EpsilonNonPositive: return "epsilon not positive";
    case ErrorKind::DigitOutOfRange: return "digit out of range";
    case ErrorKind::NonReducedFraction: return "fraction not in lowest terms";
  }
  return "unknown error";
}

/// Single exception type for the library; `kind()` lets callers pick a recovery path.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorKind::Precondition, what);
}

}  // namespace narayana
