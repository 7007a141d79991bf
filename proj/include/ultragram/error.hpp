#pragma once

#include <stdexcept>
#include <string>

namespace ultragram {

/// Failure classes. The CLI maps each one onto a distinct exit code.
enum class ErrorKind {
  InvalidInput,     // unparsable data or a violated metric axiom
  InvalidArgument,  // a caller-side precondition (p < 0, wrong length, ...)
  NotUltrametric,   // an ultrametric-only operation on a general metric
  Numeric,          // eigensolver non-convergence, non-PSD Gramian, overflow
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ultragram
