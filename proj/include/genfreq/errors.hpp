#pragma once

#include <stdexcept>
#include <string>

namespace genfreq {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands do not live in the same space (vector dims, channel counts, ...).
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// The curve (or signal vector) has vanishing magnitude, so tangent,
/// curvature and frequency are undefined at this point.
class DegenerateCurve : public Error {
public:
  using Error::Error;
};

/// A parameter is outside its documented domain.
class InvalidParameter : public Error {
public:
  using Error::Error;
};

/// A CSV file could not be parsed or violates the file-format invariants.
class CsvError : public Error {
public:
  using Error::Error;
};

}  // namespace genfreq
