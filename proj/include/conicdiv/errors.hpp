#pragma once

#include <stdexcept>
#include <string>

namespace conicdiv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (wrong lengths, bad schema, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The generators do not span R^d.
class NotFullDimensional : public InputError {
 public:
  using InputError::InputError;
};

/// The cone contains a line, so the monoid has nonzero units.
class NotPointed : public InputError {
 public:
  using InputError::InputError;
};

/// A computed object failed one of its structural self-checks.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace conicdiv
