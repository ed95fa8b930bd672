// SPDX-License-Identifier: Apache-2.0
#include "psdblk/core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "psdblk/errors.hpp"

namespace psdblk {

bool all_finite(const ComplexMatrix& Z) {
  for (Index j = 0; j < Z.cols(); ++j)
    for (Index i = 0; i < Z.rows(); ++i)
      if (!std::isfinite(Z(i, j).real()) || !std::isfinite(Z(i, j).imag())) return false;
  return true;
}

double hermitian_residual(const ComplexMatrix& Z) {
  return (Z - Z.adjoint()).norm();
}

bool is_hermitian(const ComplexMatrix& Z, double tol) {
  if (Z.rows() != Z.cols()) return false;
  return hermitian_residual(Z) <= tol * (1.0 + Z.norm());
}

ComplexMatrix re_part(const ComplexMatrix& Z) { return (Z + Z.adjoint()) / 2.0; }

ComplexMatrix im_part(const ComplexMatrix& Z) {
  return (Z - Z.adjoint()) / Complex(0.0, 2.0);
}

bool is_real(const ComplexMatrix& Z) {
  for (Index j = 0; j < Z.cols(); ++j)
    for (Index i = 0; i < Z.rows(); ++i)
      if (Z(i, j).imag() != 0.0) return false;
  return true;
}

ComplexMatrix direct_sum(const ComplexMatrix& A, const ComplexMatrix& B) {
  ComplexMatrix Z = ComplexMatrix::Zero(A.rows() + B.rows(), A.cols() + B.cols());
  Z.topLeftCorner(A.rows(), A.cols()) = A;
  Z.bottomRightCorner(B.rows(), B.cols()) = B;
  return Z;
}

ComplexMatrix BlockPsd::assemble() const {
  ComplexMatrix M(n + m, n + m);
  M.topLeftCorner(n, n) = A;
  M.topRightCorner(n, m) = X;
  M.bottomLeftCorner(m, n) = X.adjoint();
  M.bottomRightCorner(m, m) = B;
  return M;
}

namespace {

void require_finite(const ComplexMatrix& Z, const char* name) {
  if (!all_finite(Z)) {
    throw NotFinite(std::string(name) + " has a non-finite entry");
  }
}

void require_hermitian(const ComplexMatrix& Z, const char* name, double tol) {
  if (Z.rows() != Z.cols()) {
    std::ostringstream os;
    os << name << " must be square, got " << Z.rows() << "x" << Z.cols();
    throw DimensionMismatch(os.str());
  }
  double res = hermitian_residual(Z);
  if (res > tol * (1.0 + Z.norm())) {
    std::ostringstream os;
    os << name << " is not Hermitian: ||Z - Z*||_F = " << res;
    throw NotHermitian(os.str(), res);
  }
}

// Ascending eigenvalues straight from Eigen.
Eigen::SelfAdjointEigenSolver<ComplexMatrix> solve_hermitian(const ComplexMatrix& Z,
                                                             bool vectors) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es;
  es.compute(Z, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ConvergenceFailure("Hermitian eigensolver did not converge");
  }
  return es;
}

}  // namespace

BlockPsd validate_block_psd(const ComplexMatrix& A, const ComplexMatrix& X,
                            const ComplexMatrix& B, double tol) {
  require_finite(A, "A");
  require_finite(X, "X");
  require_finite(B, "B");
  if (A.rows() == 0 || B.rows() == 0) throw EmptyInput("blocks must be non-empty");
  if (A.rows() != A.cols() || B.rows() != B.cols() || X.rows() != A.rows() ||
      X.cols() != B.cols()) {
    std::ostringstream os;
    os << "blocks do not conform: A " << A.rows() << "x" << A.cols() << ", X " << X.rows()
       << "x" << X.cols() << ", B " << B.rows() << "x" << B.cols();
    throw DimensionMismatch(os.str());
  }
  require_hermitian(A, "A", tol);
  require_hermitian(B, "B", tol);

  BlockPsd M;
  M.n = A.rows();
  M.m = B.rows();
  M.A = re_part(A);
  M.X = X;
  M.B = re_part(B);

  auto es = solve_hermitian(M.assemble(), false);
  double lmin = es.eigenvalues()(0);
  double lmax_abs = std::max(std::abs(es.eigenvalues()(0)),
                             std::abs(es.eigenvalues()(es.eigenvalues().size() - 1)));
  if (lmin < -tol * (1.0 + lmax_abs)) {
    std::ostringstream os;
    os << "assembled matrix is not PSD: lambda_min = " << lmin << " (threshold "
       << -tol * (1.0 + lmax_abs) << ")";
    throw NotPsd(os.str(), lmin);
  }
  return M;
}

SpectralData eig_hermitian_desc(const ComplexMatrix& Z) {
  require_finite(Z, "Z");
  require_hermitian(Z, "Z", kDefaultTol);
  auto es = solve_hermitian(re_part(Z), true);
  Index d = Z.rows();
  SpectralData out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors.resize(d, d);
  for (Index j = 0; j < d; ++j) out.eigenvectors.col(j) = es.eigenvectors().col(d - 1 - j);
  return out;
}

namespace {

// Shared kernel: spectral function with clamping of the [-tau, 0) band.
ComplexMatrix spectral_map(const ComplexMatrix& Z, const std::function<double(double)>& f,
                           const char* what) {
  auto es = solve_hermitian(re_part(Z), true);
  RealVector lam = es.eigenvalues();
  double lmax = lam.size() ? lam(lam.size() - 1) : 0.0;
  double tau = kDefaultTol * (1.0 + std::max(lmax, 0.0));
  double lmin = lam.size() ? lam(0) : 0.0;
  if (lmin < -tau) {
    std::ostringstream os;
    os << what << ": input is not PSD, lambda_min = " << lmin;
    throw NotPsd(os.str(), lmin);
  }
  RealVector mapped(lam.size());
  for (Index i = 0; i < lam.size(); ++i) mapped(i) = f(std::max(lam(i), 0.0));
  ComplexMatrix S = es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
  return re_part(S);
}

}  // namespace

ComplexMatrix sqrt_psd(const ComplexMatrix& Z) {
  require_finite(Z, "Z");
  require_hermitian(Z, "Z", kDefaultTol);
  return spectral_map(Z, [](double t) { return std::sqrt(t); }, "sqrt_psd");
}

ComplexMatrix matrix_power_psd(const ComplexMatrix& Z, double p) {
  if (!(p > 0.0)) {
    std::ostringstream os;
    os << "matrix power requires p > 0, got " << p;
    throw NonpositiveExponent(os.str());
  }
  require_finite(Z, "Z");
  require_hermitian(Z, "Z", kDefaultTol);
  return spectral_map(Z, [p](double t) { return std::pow(t, p); }, "matrix_power_psd");
}

ComplexMatrix abs_value(const ComplexMatrix& Z) {
  require_finite(Z, "Z");
  if (Z.rows() != Z.cols()) throw NotSquare("absolute value needs a square matrix");
  // (Z*Z)^{1/2} computed through the SVD right factor; avoids squaring.
  Eigen::JacobiSVD<ComplexMatrix> svd(Z, Eigen::ComputeFullV);
  ComplexMatrix S = svd.matrixV() * svd.singularValues().asDiagonal() *
                    svd.matrixV().adjoint();
  return re_part(S);
}

RealVector hermitian_eigenvalues_desc(const ComplexMatrix& Z) {
  auto es = solve_hermitian(re_part(Z), false);
  return es.eigenvalues().reverse();
}

}  // namespace psdblk
