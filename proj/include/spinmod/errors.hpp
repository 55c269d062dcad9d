#pragma once

#include <stdexcept>
#include <string>

namespace spinmod {

/// Bad user input: malformed curve files, out-of-range parameters, violated
/// preconditions. The CLI maps these to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested enumeration exceeds one of the hard size caps.
class LimitError : public InputError {
 public:
  using InputError::InputError;
};

/// An identity that must hold by construction did not. Never expected to fire.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace spinmod
