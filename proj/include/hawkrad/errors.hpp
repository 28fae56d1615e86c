#pragma once

#include <stdexcept>
#include <string>

namespace hawkrad {

// Base of every error thrown by the library. The CLI maps subclasses onto
// exit codes: UsageError -> 1, DomainError -> 2, NumericalError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed request: bad grid, bad policy, mismatched inputs.
class UsageError : public Error {
public:
    using Error::Error;
};

// Physically invalid input, e.g. a super-extremal black hole.
class DomainError : public Error {
public:
    using Error::Error;
};

// An emission whose remnant violates M > 0 or sub-extremality.
class RemnantInvalid : public DomainError {
public:
    using DomainError::DomainError;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// A cascade reached a state with no admissible emission before the stop mass.
class SimulationStuck : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace hawkrad
