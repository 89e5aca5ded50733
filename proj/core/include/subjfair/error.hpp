#pragma once

#include <stdexcept>
#include <string>

namespace subjfair {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two outcomes of different kinds (label vs score) were compared.
class KindMismatchError : public Error {
 public:
  using Error::Error;
};

/// An individual id that is not part of the population was referenced.
class UnknownIdError : public Error {
 public:
  using Error::Error;
};

/// A parameter or rule set is out of its admissible range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Missing or malformed caller-supplied data (scores, distances, attributes).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An acceptance ledger references an obligation that was never issued.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace subjfair
