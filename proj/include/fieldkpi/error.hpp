#pragma once

#include <stdexcept>
#include <string>

namespace fieldkpi {

/// Base class for all errors raised by the toolkit.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number when known.
struct ParseError : Error {
  ParseError(const std::string& msg, int line_number = 0)
      : Error(line_number > 0 ? msg + " at line " + std::to_string(line_number) : msg),
        line(line_number) {}
  int line;
};

/// Simulator configuration that cannot be generated (names the binding constraint).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace fieldkpi
