// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace psdblk {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotHermitian : Error {
  double residual;
  NotHermitian(const std::string& what, double r) : Error(what), residual(r) {}
};

struct NotPsd : Error {
  double lambda_min;
  NotPsd(const std::string& what, double lmin) : Error(what), lambda_min(lmin) {}
};

struct ConvergenceFailure : Error {
  using Error::Error;
};

struct NonpositiveExponent : Error {
  using Error::Error;
};

struct ExponentBelowOne : Error {
  using Error::Error;
};

struct UnequalBlockSizes : Error {
  using Error::Error;
};

struct DecompositionResidualExceeded : Error {
  double residual;
  DecompositionResidualExceeded(const std::string& what, double r) : Error(what), residual(r) {}
};

struct EnvelopeViolation : Error {
  double min_gap;
  EnvelopeViolation(const std::string& what, double g) : Error(what), min_gap(g) {}
};

struct InvalidNormParameter : Error {
  using Error::Error;
};

struct NotSquare : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

struct UnknownFunctionTag : Error {
  using Error::Error;
};

struct UnsupportedModeDimensions : Error {
  using Error::Error;
};

struct NonRealInput : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct NotFinite : Error {
  using Error::Error;
};

}  // namespace psdblk
