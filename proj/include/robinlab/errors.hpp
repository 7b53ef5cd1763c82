#pragma once

#include <stdexcept>
#include <string>

namespace robinlab {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- geometry --------------------------------------------------------------
struct InvalidPolygon : Error {
  using Error::Error;
};
struct NonObtuseUnachievable : Error {
  using Error::Error;
};

// -- coefficients ----------------------------------------------------------
struct NonSymmetricTensor : Error {
  using Error::Error;
};
struct NegativePotential : Error {
  using Error::Error;
};

// -- assembly --------------------------------------------------------------
struct QuadratureSingularity : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};

// -- spectral --------------------------------------------------------------
struct SingularMass : Error {
  using Error::Error;
};
struct ShiftAtSpectrum : Error {
  using Error::Error;
};

// -- order -----------------------------------------------------------------
struct SpaceMismatch : Error {
  using Error::Error;
};
struct PreconditionUnmet : Error {
  using Error::Error;
};
struct GridMismatch : Error {
  using Error::Error;
};

// -- bounds ----------------------------------------------------------------
struct RangeOverflow : Error {
  using Error::Error;
};
struct RangeUnderflow : Error {
  using Error::Error;
};
struct QuadratureNonConvergence : Error {
  using Error::Error;
};
struct EmptySampleSet : Error {
  using Error::Error;
};
struct DiagonalPairRejected : Error {
  using Error::Error;
};

// -- cli -------------------------------------------------------------------
struct SpecParseError : Error {
  using Error::Error;
};

}  // namespace robinlab
