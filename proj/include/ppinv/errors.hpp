#pragma once

#include <stdexcept>
#include <string>

namespace ppinv {

/// Base of every error raised by the library. The CLI maps subclasses onto
/// exit codes, so each failure kind gets its own type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Operands live in different field levels (base vs top, or unrelated fields).
class LevelMismatch : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class NoSuchRoot : public Error {
 public:
  using Error::Error;
};

class NotAPermutation : public Error {
 public:
  using Error::Error;
};

/// The supplied maps do not satisfy the commuting square they claim to form.
class DiagramMismatch : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class NoBezout : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  PreconditionFailed(std::string condition, const std::string& what)
      : Error(condition + ": " + what), condition_(std::move(condition)) {}

  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

/// A structural assertion that can only fail on a construction bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (field spec, polynomial CSV, parameter file).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A field description that is well-formed text but not a valid field.
class InvalidField : public Error {
 public:
  using Error::Error;
};

}  // namespace ppinv
