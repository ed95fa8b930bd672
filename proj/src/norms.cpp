// SPDX-License-Identifier: Apache-2.0
#include "psdblk/norms.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "psdblk/core.hpp"
#include "psdblk/errors.hpp"

namespace psdblk {

NormKind NormKind::schatten(double p) {
  if (!(p >= 1.0)) {
    std::ostringstream os;
    os << "Schatten norm requires p >= 1, got " << p;
    throw InvalidNormParameter(os.str());
  }
  return {Tag::Schatten, p, 0};
}

NormKind NormKind::ky_fan(int k) {
  if (k < 1) {
    std::ostringstream os;
    os << "Ky Fan norm requires k >= 1, got " << k;
    throw InvalidNormParameter(os.str());
  }
  return {Tag::KyFan, 0.0, k};
}

NormKind NormKind::parse(std::string_view code) {
  if (code == "op") return operator_norm();
  if (code == "tr") return trace();
  if (code == "fro") return frobenius();
  auto parse_tail = [&](std::string_view tail) -> double {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), value);
    if (ec != std::errc() || ptr != tail.data() + tail.size()) {
      throw InvalidNormParameter("bad norm parameter in '" + std::string(code) + "'");
    }
    return value;
  };
  if (code.starts_with("s:")) return schatten(parse_tail(code.substr(2)));
  if (code.starts_with("kf:")) {
    double k = parse_tail(code.substr(3));
    if (k != std::floor(k)) throw InvalidNormParameter("Ky Fan index must be an integer");
    return ky_fan(static_cast<int>(k));
  }
  throw InvalidNormParameter("unknown norm code '" + std::string(code) + "'");
}

std::string NormKind::str() const {
  switch (tag) {
    case Tag::Operator: return "op";
    case Tag::Trace: return "tr";
    case Tag::Frobenius: return "fro";
    case Tag::Schatten: {
      std::ostringstream os;
      os << "s:" << p;
      return os.str();
    }
    case Tag::KyFan: {
      std::ostringstream os;
      os << "kf:" << k;
      return os.str();
    }
  }
  return "?";
}

NormBattery NormBattery::default_for(Index dim) {
  NormBattery b;
  b.kinds = {NormKind::operator_norm(), NormKind::trace(), NormKind::frobenius(),
             NormKind::schatten(1.5), NormKind::schatten(3.0)};
  for (Index k = 1; k <= dim; ++k) b.kinds.push_back(NormKind::ky_fan(static_cast<int>(k)));
  return b;
}

NormBattery NormBattery::parse(std::string_view spec, Index dim) {
  if (spec.empty() || spec == "default") return default_for(dim);
  NormBattery b;
  size_t pos = 0;
  while (pos <= spec.size()) {
    size_t comma = spec.find(',', pos);
    std::string_view item = spec.substr(pos, comma == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : comma - pos);
    if (item.empty()) throw InvalidNormParameter("empty entry in battery spec");
    if (item == "kf:*") {
      for (Index k = 1; k <= dim; ++k)
        b.kinds.push_back(NormKind::ky_fan(static_cast<int>(k)));
    } else {
      b.kinds.push_back(NormKind::parse(item));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (b.kinds.empty()) throw InvalidNormParameter("battery spec produced no norms");
  return b;
}

RealVector singular_values(const ComplexMatrix& Z) {
  Eigen::JacobiSVD<ComplexMatrix> svd(Z);
  return svd.singularValues();  // already decreasing
}

RealVector hermitian_sv(const ComplexMatrix& Z) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(re_part(Z), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("eigensolver failed");
  RealVector sv = es.eigenvalues().cwiseAbs();
  std::sort(sv.data(), sv.data() + sv.size(), std::greater<double>());
  return sv;
}

double norm_from_sv(const RealVector& sv, const NormKind& kind) {
  if (sv.size() == 0) throw EmptyInput("no singular values");
  switch (kind.tag) {
    case NormKind::Tag::Operator:
      return sv(0);
    case NormKind::Tag::Trace:
      return sv.sum();
    case NormKind::Tag::Frobenius:
      return sv.norm();
    case NormKind::Tag::Schatten: {
      if (!(kind.p >= 1.0)) throw InvalidNormParameter("Schatten p must be >= 1");
      double acc = 0.0;
      for (Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), kind.p);
      return std::pow(acc, 1.0 / kind.p);
    }
    case NormKind::Tag::KyFan: {
      if (kind.k < 1) throw InvalidNormParameter("Ky Fan k must be >= 1");
      Index k = std::min<Index>(kind.k, sv.size());  // zero-padding convention
      return sv.head(k).sum();
    }
  }
  throw InvalidNormParameter("unhandled norm tag");
}

double sym_norm(const ComplexMatrix& Z, const NormKind& kind) {
  if (Z.size() == 0) throw EmptyInput("empty matrix");
  if (kind.tag == NormKind::Tag::KyFan &&
      kind.k > std::min(Z.rows(), Z.cols())) {
    std::ostringstream os;
    os << "Ky Fan k = " << kind.k << " exceeds min dimension "
       << std::min(Z.rows(), Z.cols());
    throw InvalidNormParameter(os.str());
  }
  return norm_from_sv(singular_values(Z), kind);
}

namespace {

constexpr int kAngleGrid = 1024;
constexpr double kAngleResolution = 1e-12;

// lambda_max (want_max) or lambda_min of Re(e^{i theta} X) as a function of
// theta, evaluated through the two fixed Hermitian components.
struct AngleObjective {
  ComplexMatrix H1;  // Re X
  ComplexMatrix H2;  // Im X
  bool want_max;

  double operator()(double theta) const {
    ComplexMatrix H = std::cos(theta) * H1 - std::sin(theta) * H2;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceFailure("eigensolver failed");
    const auto& ev = es.eigenvalues();
    return want_max ? ev(ev.size() - 1) : ev(0);
  }
};

// Grid scan then golden-section refinement inside the bracketing cell.
// Ties on the grid go to the lowest angle so the scan is deterministic.
std::pair<double, double> maximize_over_angles(const AngleObjective& f) {
  const double step = 2.0 * std::numbers::pi / kAngleGrid;
  double best_val = -std::numeric_limits<double>::infinity();
  int best_j = 0;
  for (int j = 0; j < kAngleGrid; ++j) {
    double v = f(j * step);
    if (v > best_val) {
      best_val = v;
      best_j = j;
    }
  }
  double a = (best_j - 1) * step;
  double b = (best_j + 1) * step;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > kAngleResolution) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  double theta = (a + b) / 2.0;
  double value = f(theta);
  if (best_val > value) {  // refinement must never lose the grid point
    value = best_val;
    theta = best_j * step;
  }
  theta = std::fmod(theta + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  return {value, theta};
}

}  // namespace

NumericalRadius numerical_radius(const ComplexMatrix& X) {
  if (X.rows() != X.cols()) throw NotSquare("numerical radius needs a square matrix");
  if (X.size() == 0) throw EmptyInput("empty matrix");
  AngleObjective f{re_part(X), im_part(X), true};
  auto [value, theta] = maximize_over_angles(f);
  return {value, theta};
}

std::string verdict_name(RangeVerdict v) {
  switch (v) {
    case RangeVerdict::ZeroOutsideRange: return "zero_outside_range";
    case RangeVerdict::ZeroOutsideRelativeInteriorOnly:
      return "zero_outside_relative_interior_only";
    case RangeVerdict::ZeroInside: return "zero_inside";
  }
  return "?";
}

RangePosition classify_zero_vs_range(const ComplexMatrix& X) {
  if (X.rows() != X.cols()) throw NotSquare("range classification needs a square matrix");
  if (X.size() == 0) throw EmptyInput("empty matrix");
  AngleObjective f{re_part(X), im_part(X), false};
  auto [g, theta] = maximize_over_angles(f);
  RangePosition out;
  out.certificate_eigenvalue = g;
  if (g > kRangeTol) {
    out.verdict = RangeVerdict::ZeroOutsideRange;
    out.separating_angle = theta;
  } else if (g >= -kRangeTol) {
    out.verdict = RangeVerdict::ZeroOutsideRelativeInteriorOnly;
    out.separating_angle = theta;
  } else {
    out.verdict = RangeVerdict::ZeroInside;
  }
  return out;
}

MajorizationResult weak_majorizes(std::vector<double> upper, std::vector<double> lower) {
  if (upper.empty() || lower.empty()) throw EmptyInput("majorization needs non-empty sequences");
  size_t len = std::max(upper.size(), lower.size());
  upper.resize(len, 0.0);
  lower.resize(len, 0.0);
  std::sort(upper.begin(), upper.end(), std::greater<double>());
  std::sort(lower.begin(), lower.end(), std::greater<double>());
  double total_upper = 0.0;
  for (double v : upper) total_upper += v;
  const double tol = 1e-10 * (1.0 + total_upper);

  MajorizationResult res;
  res.holds = true;
  res.worst_k = 1;
  res.worst_gap = -std::numeric_limits<double>::infinity();
  double pu = 0.0, pl = 0.0;
  for (size_t k = 0; k < len; ++k) {
    pu += upper[k];
    pl += lower[k];
    double gap = pl - pu;
    if (gap > res.worst_gap) {
      res.worst_gap = gap;
      res.worst_k = static_cast<int>(k + 1);
    }
    if (gap > tol) res.holds = false;
  }
  return res;
}

}  // namespace psdblk
