#pragma once

#include <stdexcept>
#include <string>

namespace twocolor {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class UnsupportedPower : public Error {
 public:
  using Error::Error;
};

// An operation was called on inputs it is not defined for
// (e.g. a one-color check on a two-color field).
class InvalidUse : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class StepFailure : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

// Fourier amplitudes of a parity class that the symmetry analysis forbids
// exceed the cross-talk threshold.
class ParityViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace twocolor
