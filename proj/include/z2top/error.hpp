#pragma once

#include <stdexcept>
#include <string>

namespace z2top {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the documented range (dimension, tolerance, length).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A fractional power was requested off the positive real branch.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The a-coordinates are non-positive or have coincident entries, so the
/// single-variable reduction is undefined.
class DegenerateOrbit : public Error {
 public:
  using Error::Error;
};

/// The request is well-formed but outside what is implemented.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace z2top
