#pragma once

#include <stdexcept>
#include <string>

namespace ruenergy {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (negative current, eta_pa <= 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A profile, scenario or config document is inconsistent or malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Efficiency was requested for a run that consumed no energy.
class UndefinedEfficiency : public Error {
 public:
  using Error::Error;
};

/// Too few samples for the requested estimate.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ruenergy
