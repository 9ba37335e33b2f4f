#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace expt {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure could not deliver its result (failed division,
/// divergent series, singular system).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An evaluation point lies where the requested formula or method is not
/// defined (inside a domain, on a branch cut, at a pole).
class RegionError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (JSON, complex literals).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A point of the Riemann sphere: a complex number or infinity.
struct SpherePoint {
  cplx value{};
  bool infinite = false;

  static SpherePoint at(cplx z) { return {z, false}; }
  static SpherePoint infinity() { return {cplx{}, true}; }
};

}  // namespace expt
