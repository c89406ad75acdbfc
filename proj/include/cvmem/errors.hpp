#pragma once

#include <stdexcept>
#include <string>

namespace cvmem {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A value or object was configured inconsistently (e.g. an empty mode list).
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Vector/matrix dimensions do not line up.
class ShapeError : public Error {
  public:
    using Error::Error;
};

/// A mode label is not present in the ordering it was looked up in.
class LookupError : public Error {
  public:
    using Error::Error;
};

/// Input data violates a documented precondition (bad graph, negative
/// coupling, non-finite squeezing, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A JSON document could not be parsed or is missing/misusing a field.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
  public:
    using Error::Error;
};

/// The command line was used incorrectly.
class UsageError : public Error {
  public:
    using Error::Error;
};

} // namespace cvmem
