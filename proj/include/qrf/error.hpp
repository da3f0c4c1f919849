#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qrf {

/// Three significant digits, for deviations in messages.
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

/// Bad argument: index out of range, mismatched dimensions, malformed input.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A constructed object (group, representation, POVM, frame) failed validation.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The operation is not defined for the kind of frame supplied.
class UnsupportedFrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked precondition of the operation does not hold for the input.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Frame operator of a coherent-state system is not a multiple of identity.
class ResolutionOfIdentityError : public ConstructionError {
 public:
  ResolutionOfIdentityError(const std::string& what, double deviation)
      : ConstructionError(what), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

}  // namespace qrf
