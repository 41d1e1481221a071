#pragma once

#include <stdexcept>
#include <string>

namespace kisin {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input data: unparsable literals, malformed module files, inconsistent
// parameters.  The CLI maps these to exit status 2.
class ParseError : public Error {
public:
    using Error::Error;
};

class ParameterMismatch : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// A computation could not be carried out with the precision at hand.  This is
// never a mathematical verdict: callers may retry with more precision.
class InsufficientPrecision : public Error {
public:
    using Error::Error;
};

// Mathematical failures (exit status 1 in the CLI).
class MathError : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public MathError {
public:
    using MathError::MathError;
};

class HeightViolation : public MathError {
public:
    using MathError::MathError;
};

class NotInS : public MathError {
public:
    using MathError::MathError;
};

class NotMaximal : public MathError {
public:
    using MathError::MathError;
};

class UnboundedHeight : public MathError {
public:
    using MathError::MathError;
};

class CensusTooLarge : public MathError {
public:
    using MathError::MathError;
};

}  // namespace kisin
