#pragma once

#include <stdexcept>
#include <string>

namespace radii {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch: non-square input, mismatched blocks, wrong vector length.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A scalar parameter outside its admissible range (rho, nu, s, lambda, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed external input (matrix files, range specs, identifiers).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace radii
