// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psdblk/matrix.hpp"

namespace psdblk {

/// Tagged choice of symmetric norm. CLI encoding: "op", "tr", "fro",
/// "s:<p>", "kf:<k>".
struct NormKind {
  enum class Tag { Operator, Trace, Frobenius, Schatten, KyFan };

  Tag tag = Tag::Operator;
  double p = 0.0;  // Schatten only, p >= 1
  int k = 0;       // KyFan only, k >= 1

  static NormKind operator_norm() { return {Tag::Operator, 0.0, 0}; }
  static NormKind trace() { return {Tag::Trace, 0.0, 0}; }
  static NormKind frobenius() { return {Tag::Frobenius, 0.0, 0}; }
  static NormKind schatten(double p);
  static NormKind ky_fan(int k);

  static NormKind parse(std::string_view code);
  std::string str() const;
};

/// Norm battery applied by the inequality checks. The default battery for
/// ambient dimension d is {op, tr, fro, s:1.5, s:3, kf:1..kf:d}; the Ky Fan
/// family is the majorization core that certifies all symmetric norms.
struct NormBattery {
  std::vector<NormKind> kinds;

  static NormBattery default_for(Index dim);
  /// Comma-separated NormKind codes; "kf:*" expands to all k up to dim.
  static NormBattery parse(std::string_view spec, Index dim);
};

/// Singular values, sorted decreasing.
RealVector singular_values(const ComplexMatrix& Z);

/// Singular values of a Hermitian matrix via its eigenvalues (fast path).
RealVector hermitian_sv(const ComplexMatrix& Z);

/// Evaluates a symmetric norm from a decreasing singular-value vector.
/// Ky Fan k is clamped to the vector length: this is the value of the norm
/// induced on smaller spaces by zero padding.
double norm_from_sv(const RealVector& sv, const NormKind& kind);

/// Symmetric norm of a rectangular matrix. Ky Fan requires
/// k <= min(rows, cols) here; battery evaluation uses the padded convention.
double sym_norm(const ComplexMatrix& Z, const NormKind& kind);

struct NumericalRadius {
  double w = 0.0;
  double maximizing_angle = 0.0;
};

/// w(X) = max over theta of lambda_max(Re(e^{i theta} X)), computed on a
/// 1024-point grid with golden-section refinement to angle resolution 1e-12.
NumericalRadius numerical_radius(const ComplexMatrix& X);

enum class RangeVerdict { ZeroOutsideRange, ZeroOutsideRelativeInteriorOnly, ZeroInside };

std::string verdict_name(RangeVerdict v);

/// Position of 0 relative to the numerical range W(X), certified by
/// g = max over theta of lambda_min(Re(e^{i theta} X)):
///   g >  tau  -> ZeroOutsideRange (e^{i theta} X strictly accretive)
///   |g| <= tau -> ZeroOutsideRelativeInteriorOnly
///   g < -tau  -> ZeroInside
/// When W(X) is a segment through 0 the certificate g = 0 still reports the
/// boundary verdict; whether that matches the relative-interior reading of
/// W_int(X) in the degenerate case is intentionally left as reported.
struct RangePosition {
  RangeVerdict verdict = RangeVerdict::ZeroInside;
  std::optional<double> separating_angle;
  double certificate_eigenvalue = 0.0;
};

inline constexpr double kRangeTol = 1e-8;

RangePosition classify_zero_vs_range(const ComplexMatrix& X);

struct MajorizationResult {
  bool holds = false;
  int worst_k = 0;       // 1-based index of the largest gap
  double worst_gap = 0;  // prefix(lower,k) - prefix(upper,k); positive = violation
};

/// Weak majorization test: holds iff every prefix sum of `lower` is at most
/// the matching prefix sum of `upper` plus 1e-10 * (1 + total of upper).
/// Both sequences are sorted decreasing here; unequal lengths are padded
/// with zeros.
MajorizationResult weak_majorizes(std::vector<double> upper, std::vector<double> lower);

}  // namespace psdblk
