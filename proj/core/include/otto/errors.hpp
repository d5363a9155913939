#pragma once

#include <stdexcept>

namespace otto {

// Rejected input: bad parameters, malformed configuration, mismatched operands.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A qubit label that is not part of the register it was looked up in.
class LabelError : public InputError {
 public:
  using InputError::InputError;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

// Configuration source could not be found or parsed.
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

// A computed state or quantity violated a physical invariant
// (trace, Hermiticity, positivity, energy balance, frozen populations).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace otto
