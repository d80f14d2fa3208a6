#pragma once

#include <stdexcept>
#include <string>

namespace costgeom {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: non-square matrix, duplicate labels, negative entries,
/// unparsable files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An argument outside the operation's domain (negative radius, p < 1,
/// unknown label, endpoint mismatch, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A value needed by the operation is infinite or otherwise undefined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Structural hypothesis of a word-rewriting structure does not hold.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive subset enumeration requested on a ground set that is too large.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace costgeom
