#pragma once

#include <stdexcept>
#include <string>

namespace factornorm {

/// Bad input: invalid geometry, out-of-range parameters, unparseable text.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace factornorm
