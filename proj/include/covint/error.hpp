#pragma once

#include <stdexcept>
#include <string>

namespace covint {

// Base for every numerical failure raised by the library. The CLI maps all of
// these to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (pole, negative scale, etc.).
class DomainError : public Error {
public:
    using Error::Error;
};

// A = B = 0: the coverage integral diverges.
class DegenerateError : public DomainError {
public:
    using DomainError::DomainError;
};

// method = exact requested for parameters with no closed form.
class UnsupportedExactError : public DomainError {
public:
    using DomainError::DomainError;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

// A series, continued fraction or adaptive rule could not reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// A result fell outside its admissible range (e.g. coverage probability > 1).
class RangeError : public Error {
public:
    using Error::Error;
};

}  // namespace covint
