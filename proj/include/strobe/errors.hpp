#pragma once

#include <stdexcept>
#include <string>

// Error taxonomy. Each class maps to a distinct CLI exit code:
// ConfigError -> 2, DivergenceError -> 3, IoError -> 4.

namespace strobe {

// Invalid or inconsistent user-supplied configuration (bad key, value out of
// its physical domain, conflicting keys, malformed document).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The integrator detected a non-finite or runaway state.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace strobe
