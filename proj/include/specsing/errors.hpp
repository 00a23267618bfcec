#pragma once

#include <stdexcept>
#include <string>

namespace specsing {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Wavenumber too close to zero for the plane-wave basis to be invertible.
class DegenerateWavenumber : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

/// Bessel evaluation requested at z = 0.
class OriginError : public Error {
 public:
  using Error::Error;
};

/// A series failed to converge within its term budget.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// An iterative solver exhausted its iteration budget.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Solver seed lies outside the asymptotic (x >> 1) regime.
class SeedOutOfRegime : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace specsing
