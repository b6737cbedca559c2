#pragma once

#include <stdexcept>
#include <string>

namespace lax2d {

/// Base error for everything raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration or usage: bad grid sizes, unknown names, malformed
/// config files, preconditions the caller can fix. Maps to CLI exit code 2.
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Numerical failure at run time: non-finite fields, violated solvability
/// conditions, eigensolver breakdown. Maps to CLI exit code 1.
struct NumericError : Error {
  explicit NumericError(const std::string& what) : Error(what) {}
};

}  // namespace lax2d
