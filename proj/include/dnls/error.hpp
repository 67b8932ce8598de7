#pragma once

#include <stdexcept>
#include <string>

namespace dnls {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dyadic index not in {1, 2, 4, ...}.
class InvalidIndexError : public Error {
 public:
  using Error::Error;
};

// Interval [a, b] with a >= b.
class InvalidIntervalError : public Error {
 public:
  using Error::Error;
};

// Operation not defined on this domain kind, or a domain precondition
// (edge decay, grid size) failed.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DomainMismatchError : public Error {
 public:
  using Error::Error;
};

// Brute-force oracles refuse grids above their size limit.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Time window does not fit inside the trajectory span.
class ExtensionError : public Error {
 public:
  using Error::Error;
};

// Mass drift along a trajectory exceeded tolerance.
class ConservationError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// Multiplier point off its convolution hyperplane.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double time)
      : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

// Field dump with a bad header, payload length or checksum.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace dnls
