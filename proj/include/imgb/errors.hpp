#pragma once

#include <stdexcept>
#include <string>

namespace imgb {

/// Malformed user input: parse failures, invalid degrees, bad file contents.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to converge or hit a degenerate configuration.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The hypotheses of a verifier were not met. Distinct from a
/// verification failure, which is reported in the verifier's result.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration exceeded its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace imgb
