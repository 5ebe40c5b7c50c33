#pragma once

#include <stdexcept>

namespace pell {

// Invalid input: bad field parameters, malformed points, out-of-range values.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation exists but is not defined for this cube/square class
// (e.g. compressing a point when no explicit inverse map is known).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace pell
