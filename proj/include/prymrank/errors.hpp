#pragma once

#include <stdexcept>
#include <string>

namespace prymrank {

// Invalid mathematical input: reducible modulus, mismatched field contexts,
// division by zero, singular curve model and the like.
class MathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text (field specs, element and polynomial encodings, flags).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration, counting or genus cap would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prymrank
