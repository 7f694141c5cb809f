#pragma once

#include <stdexcept>
#include <string>

namespace braidforge {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed partitions, bad token indices.
struct DiagramError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct CapacityError : Error {
  using Error::Error;
};

struct UnsupportedError : Error {
  using Error::Error;
};

// A constraint closure could not be evaluated, or a point violates it.
struct ConstraintError : Error {
  using Error::Error;
};

struct SingularityError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

}  // namespace braidforge
