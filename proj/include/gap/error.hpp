#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gap {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (feature types, shapes, empty sets).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A file could not be parsed. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InputError(line == 0 ? what : what + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A numeric parameter is outside its valid range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Invalid invocation of a higher-level entry point (missing options, missing labels).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace gap
