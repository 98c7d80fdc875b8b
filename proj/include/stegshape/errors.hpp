#pragma once

#include <stdexcept>

namespace steg {

// Bad user-supplied configuration (unusable parameter values, inconsistent sizes).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// File system or file format failure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace steg
