// SPDX-License-Identifier: Apache-2.0
#include "psdblk/generators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <sstream>

#include "psdblk/errors.hpp"

namespace psdblk {

GeneratorMode parse_mode(std::string_view name) {
  if (name == "any") return GeneratorMode::Unconstrained;
  if (name == "hermitian") return GeneratorMode::HermitianX;
  if (name == "normal") return GeneratorMode::NormalX;
  if (name == "accretive") return GeneratorMode::AccretiveX;
  if (name == "range-sep") return GeneratorMode::ZeroOutsideRangeX;
  if (name == "real") return GeneratorMode::RealEntries;
  throw ParseError("unknown generator mode '" + std::string(name) + "'");
}

std::string mode_name(GeneratorMode mode) {
  switch (mode) {
    case GeneratorMode::Unconstrained: return "any";
    case GeneratorMode::HermitianX: return "hermitian";
    case GeneratorMode::NormalX: return "normal";
    case GeneratorMode::AccretiveX: return "accretive";
    case GeneratorMode::ZeroOutsideRangeX: return "range-sep";
    case GeneratorMode::RealEntries: return "real";
  }
  return "?";
}

ComplexMatrix gaussian_matrix(SplitMix64& rng, Index rows, Index cols, bool real_only) {
  ComplexMatrix G(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      G(i, j) = real_only ? Complex(rng.gaussian(), 0.0) : rng.cgaussian();
  return G;
}

ComplexMatrix wishart(SplitMix64& rng, Index dim, bool real_only) {
  ComplexMatrix G = gaussian_matrix(rng, dim, dim, real_only);
  return re_part(G.adjoint() * G);
}

ComplexMatrix haar_unitary(SplitMix64& rng, Index dim) {
  ComplexMatrix G = gaussian_matrix(rng, dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ();
  ComplexMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    Complex r = R(j, j);
    Complex phase = (std::abs(r) == 0.0) ? Complex(1.0, 0.0) : r / std::abs(r);
    Q.col(j) *= phase;
  }
  return Q;
}

ComplexMatrix gaussian_hermitian(SplitMix64& rng, Index dim, bool real_only) {
  return re_part(gaussian_matrix(rng, dim, dim, real_only));
}

namespace {

double lambda_min(const ComplexMatrix& M) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("eigensolver failed");
  return es.eigenvalues()(0);
}

}  // namespace

BlockPsd random_block_psd(Index n, Index m, GeneratorMode mode, uint64_t seed,
                          double margin) {
  if (n < 1 || m < 1) throw UnsupportedModeDimensions("block sizes must be positive");
  bool square_only = mode == GeneratorMode::HermitianX || mode == GeneratorMode::NormalX ||
                     mode == GeneratorMode::AccretiveX ||
                     mode == GeneratorMode::ZeroOutsideRangeX;
  if (square_only && n != m) {
    std::ostringstream os;
    os << "mode '" << mode_name(mode) << "' needs n = m, got " << n << " and " << m;
    throw UnsupportedModeDimensions(os.str());
  }

  std::ostringstream label;
  label << "gen/" << mode_name(mode) << "/" << n << "x" << m;
  SplitMix64 rng = stream(seed, label.str());

  BlockPsd out;
  out.n = n;
  out.m = m;

  if (mode == GeneratorMode::Unconstrained || mode == GeneratorMode::RealEntries) {
    bool real_only = mode == GeneratorMode::RealEntries;
    ComplexMatrix W = wishart(rng, n + m, real_only);
    out.A = re_part(W.topLeftCorner(n, n));
    out.X = W.topRightCorner(n, m);
    out.B = re_part(W.bottomRightCorner(m, m));
    return out;
  }

  out.A = wishart(rng, n);
  out.B = wishart(rng, n);
  switch (mode) {
    case GeneratorMode::HermitianX:
      out.X = gaussian_hermitian(rng, n);
      break;
    case GeneratorMode::NormalX: {
      ComplexMatrix W = haar_unitary(rng, n);
      ComplexMatrix d(n, 1);
      for (Index i = 0; i < n; ++i) d(i, 0) = rng.cgaussian();
      out.X = W * d.col(0).asDiagonal() * W.adjoint();
      break;
    }
    case GeneratorMode::AccretiveX: {
      ComplexMatrix P = wishart(rng, n);
      ComplexMatrix H = gaussian_hermitian(rng, n);
      out.X = P + Complex(0.0, 1.0) * H;
      break;
    }
    case GeneratorMode::ZeroOutsideRangeX: {
      ComplexMatrix K = gaussian_matrix(rng, n, n);
      Eigen::JacobiSVD<ComplexMatrix> svd(K);
      double c = svd.singularValues()(0) + 0.5 + rng.uniform01();
      double phi = 2.0 * std::numbers::pi * rng.uniform01();
      out.X = std::exp(Complex(0.0, phi)) * (c * ComplexMatrix::Identity(n, n) + K);
      break;
    }
    default:
      break;
  }

  // Diagonal-shift PSD repair: moving both corners by s I shifts the whole
  // spectrum by s and leaves X exactly as drawn. s = max(0, margin - lmin)
  // lands lambda_min at `margin` whenever it started below it.
  double lmin = lambda_min(out.assemble());
  double s = std::max(0.0, margin - lmin);
  if (s > 0.0) {
    out.A += s * ComplexMatrix::Identity(n, n);
    out.B += s * ComplexMatrix::Identity(n, n);
  }
  return out;
}

BlockPsd example_equality() {
  BlockPsd M;
  M.n = M.m = 2;
  M.A = ComplexMatrix::Zero(2, 2);
  M.A(0, 0) = 1.0;
  M.B = ComplexMatrix::Zero(2, 2);
  M.B(1, 1) = 1.0;
  M.X = ComplexMatrix::Zero(2, 2);
  M.X(0, 1) = 1.0;
  return M;
}

}  // namespace psdblk
