#pragma once

#include <stdexcept>
#include <string>

namespace rvkit {

// Domain error kinds. Exit-code mapping in the CLI: usage errors are 2,
// everything else here is 1.
enum class ErrorKind {
  DivisionByZero,
  InsufficientPrecision,
  ExtensionRequired,     // a root lives outside the declared number field
  HypothesisViolated,
  NoRootInClass,
  NoRootInBall,
  PreconditionViolated,
  PrecisionNotReached,   // Newton-Puiseux step cap hit
  RecursionBudgetExceeded,
  UnsupportedTerm,       // case-split budget hit
  ShapeMismatch,
  FocusOutsideLocus,
  DichotomyViolated,
  NothingToLower,
  SyntaxError,
  TypeError,
  IOError,
  GoldenMismatch,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind), detail_(std::move(message)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

}  // namespace rvkit
