#pragma once

#include <stdexcept>
#include <string>

namespace sscmod {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Incompatible matrix shapes (row/column counts).
struct DimensionError : Error {
  using Error::Error;
};

// Invalid argument value (out-of-range index, bad probability, epsilon too
// small, non-finite input, ...).
struct ParameterError : Error {
  using Error::Error;
};

// Request exceeds a hard enumeration cap.
struct CapacityError : Error {
  using Error::Error;
};

// Operation called on a state that does not admit it.
struct StateError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// Text-format violation, diagnosed with a 1-based line/column position.
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& message)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) +
              ": " + message),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

}  // namespace sscmod
