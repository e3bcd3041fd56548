#pragma once

#include <stdexcept>
#include <string>

namespace gapwise {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside a function's or formula's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed external input (CSV tables, report files).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Invalid library configuration, e.g. a window larger than the capacity.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant. Reaching one of these is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gapwise
