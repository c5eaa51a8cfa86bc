#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace btc {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent scenario input (schema problems, bad
/// cross-references). Maps to CLI exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation was violated (dimension mismatch,
/// state outside its domain, degenerate geometry, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace btc
