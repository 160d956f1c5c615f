#pragma once

#include <stdexcept>
#include <string>

namespace reltutte {

// Base class for input/domain errors. The CLI maps these to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Base class for "should be unreachable" faults. The CLI maps any
// std::logic_error (including these) to exit code 2.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct NonInvertibleSubstitution : Error {
  using Error::Error;
};
struct UnknownEdge : Error {
  using Error::Error;
};
struct ContractLoop : Error {
  using Error::Error;
};
struct NotACutVertex : Error {
  using Error::Error;
};
struct InvalidAttachment : Error {
  using Error::Error;
};
struct BadPartition : Error {
  using Error::Error;
};
struct BadSplit : Error {
  using Error::Error;
};
struct BadLabeling : Error {
  using Error::Error;
};
struct BadColor : Error {
  using Error::Error;
};
struct MalformedDiagram : Error {
  using Error::Error;
};

// |T(-1,-1)| not a power of two would contradict the bicycle-space identity;
// reaching it means the computation itself is broken, hence an internal error.
struct NotPowerOfTwo : InternalError {
  using InternalError::InternalError;
};

}  // namespace reltutte
