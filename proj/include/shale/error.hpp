#ifndef SHALE_ERROR_HPP
#define SHALE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace shale {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (CSV rows, config blocks, model files).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A value outside the domain an operation accepts.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Normal equations too close to singular to solve.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

}  // namespace shale

#endif  // SHALE_ERROR_HPP
