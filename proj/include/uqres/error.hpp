#pragma once

#include <stdexcept>
#include <string>

namespace uqres {

// Base of every error the toolkit throws. The CLI maps each subclass to an
// exit code: ParseError -> 2, InvariantError -> 3, CapError and
// ResourceError -> 4.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

// A value violates a documented invariant, or arguments are inconsistent.
class InvariantError : public Error {
  public:
    using Error::Error;
};

// The dimension cap (or the branch cap of the circuit simulator) is exceeded.
class CapError : public Error {
  public:
    using Error::Error;
};

// A protocol ran out of consumable resources (ebits, PR boxes).
class ResourceError : public Error {
  public:
    using Error::Error;
};

} // namespace uqres
