#pragma once

#include <stdexcept>
#include <string>

namespace rhc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric argument is outside its valid domain (modulus < 2, kappa < 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Two vectors (or a vector and a codebook) disagree on dimension or period.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A composite object failed a structural check (e.g. moduli not co-prime).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The operation is mathematically undefined for the given system.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

// Malformed input file; the message carries the location.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace rhc
