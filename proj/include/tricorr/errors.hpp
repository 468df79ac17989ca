#pragma once

#include <stdexcept>
#include <string>

namespace tricorr {

// Bad input: malformed config, out-of-range parameter, violated precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The inputs are well-formed but the quantity is undefined for them.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DarkPortError : public EvaluationError {
 public:
  explicit DarkPortError(int port)
      : EvaluationError("dark output port " + std::to_string(port)), port_(port) {}
  /// 1-based output port index.
  int port() const noexcept { return port_; }

 private:
  int port_;
};

class UnrealizableOverlapsError : public EvaluationError {
 public:
  explicit UnrealizableOverlapsError(const std::string& detail)
      : EvaluationError("unrealizable overlaps: " + detail) {}
};

}  // namespace tricorr
