// SPDX-License-Identifier: Apache-2.0
#include "psdblk/decomposition.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "psdblk/errors.hpp"

namespace psdblk {

namespace {

double unitarity(const ComplexMatrix& U) {
  return (U.adjoint() * U - ComplexMatrix::Identity(U.cols(), U.cols())).norm();
}

ComplexMatrix embed_top(const ComplexMatrix& P, Index dim) {
  ComplexMatrix Z = ComplexMatrix::Zero(dim, dim);
  Z.topLeftCorner(P.rows(), P.cols()) = P;
  return Z;
}

ComplexMatrix embed_bottom(const ComplexMatrix& P, Index dim) {
  ComplexMatrix Z = ComplexMatrix::Zero(dim, dim);
  Z.bottomRightCorner(P.rows(), P.cols()) = P;
  return Z;
}

Decomposition finish(ComplexMatrix U, ComplexMatrix V, ComplexMatrix top,
                     ComplexMatrix bottom, const ComplexMatrix& M) {
  Index dim = M.rows();
  Decomposition D;
  D.reconstruction_residual =
      (M - U * embed_top(top, dim) * U.adjoint() - V * embed_bottom(bottom, dim) * V.adjoint())
          .norm();
  D.unitarity_residual = std::max(unitarity(U), unitarity(V));
  D.U = std::move(U);
  D.V = std::move(V);
  D.top_payload = std::move(top);
  D.bottom_payload = std::move(bottom);
  double threshold = 1e-10 * (1.0 + M.norm());
  if (D.reconstruction_residual > threshold) {
    std::ostringstream os;
    os << "reconstruction residual " << D.reconstruction_residual << " exceeds "
       << threshold;
    throw DecompositionResidualExceeded(os.str(), D.reconstruction_residual);
  }
  if (D.unitarity_residual > 1e-10) {
    std::ostringstream os;
    os << "unitarity residual " << D.unitarity_residual << " exceeds 1e-10";
    throw DecompositionResidualExceeded(os.str(), D.unitarity_residual);
  }
  return D;
}

}  // namespace

Decomposition lemma_decompose(const BlockPsd& M) {
  const Index n = M.n, m = M.m, dim = n + m;
  ComplexMatrix Masm = M.assemble();
  ComplexMatrix T = sqrt_psd(Masm);
  // T Hermitian => M = T T* = T1 T1* + T2 T2* with T1*T1 = A, T2*T2 = B.
  ComplexMatrix T1 = T.leftCols(n);
  ComplexMatrix T2 = T.rightCols(m);

  // T1 = P S Q*: then T1 T1* = P diag(Q* A Q, 0) P* = U diag(A, 0) U*.
  Eigen::JacobiSVD<ComplexMatrix> svd1(T1, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ComplexMatrix U = svd1.matrixU();
  U.leftCols(n) = U.leftCols(n) * svd1.matrixV().adjoint();

  // Same for T2, then swap the first m and last n coordinates so the payload
  // lands in the lower-right corner: V = P2 diag(Q2, I)* Pi with
  // Pi (0..m-1 -> n..n+m-1, m.. -> 0..n-1).
  Eigen::JacobiSVD<ComplexMatrix> svd2(T2, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ComplexMatrix V0 = svd2.matrixU();
  V0.leftCols(m) = V0.leftCols(m) * svd2.matrixV().adjoint();
  ComplexMatrix V(dim, dim);
  V.rightCols(m) = V0.leftCols(m);
  V.leftCols(n) = V0.rightCols(n);

  return finish(std::move(U), std::move(V), M.A, M.B, Masm);
}

Decomposition congruence_decompose(const BlockPsd& M, CongruenceMode mode) {
  const Index n = M.n;
  if (M.n != M.m) {
    std::ostringstream os;
    os << "congruence decomposition needs equal blocks, got " << M.n << " and " << M.m;
    throw UnequalBlockSizes(os.str());
  }
  const Index dim = 2 * n;

  // Phase step for the ImaginaryPart mode: with D = diag(I, iI) the rotated
  // off-diagonal block is -iX and Re(-iX) = Im X, which puts +Im X in the top
  // payload as the statement requires.
  ComplexMatrix Xr = M.X;
  if (mode == CongruenceMode::ImaginaryPart) Xr = Complex(0.0, -1.0) * M.X;

  // N = J* M' J for J = (1/sqrt2)[[I, -I], [I, I]]: assembled from the block
  // formulas directly so the payloads match the statement exactly.
  BlockPsd N;
  N.n = N.m = n;
  ComplexMatrix half_sum = (M.A + M.B) / 2.0;
  ComplexMatrix reXr = re_part(Xr);
  N.A = re_part(half_sum + reXr);
  N.B = re_part(half_sum - reXr);
  N.X = (M.B - M.A) / 2.0 + Complex(0.0, 1.0) * im_part(Xr);

  Decomposition inner = lemma_decompose(N);

  ComplexMatrix J(dim, dim);
  const double s = 1.0 / std::numbers::sqrt2;
  ComplexMatrix I = ComplexMatrix::Identity(n, n);
  J.topLeftCorner(n, n) = s * I;
  J.topRightCorner(n, n) = -s * I;
  J.bottomLeftCorner(n, n) = s * I;
  J.bottomRightCorner(n, n) = s * I;

  // M' = J N J*; undo the phase congruence afterwards: M = D* M' D with
  // D = diag(I, iI), so the final unitaries are D* J (inner factors).
  ComplexMatrix U = J * inner.U;
  ComplexMatrix V = J * inner.V;
  if (mode == CongruenceMode::ImaginaryPart) {
    U.bottomRows(n) *= Complex(0.0, -1.0);
    V.bottomRows(n) *= Complex(0.0, -1.0);
  }

  return finish(std::move(U), std::move(V), inner.top_payload, inner.bottom_payload,
                M.assemble());
}

LownerEnvelope lowner_envelope(const BlockPsd& M) {
  if (M.n != M.m) {
    std::ostringstream os;
    os << "envelope needs equal blocks, got " << M.n << " and " << M.m;
    throw UnequalBlockSizes(os.str());
  }
  const Index dim = 2 * M.n;
  LownerEnvelope out;
  out.decomposition = congruence_decompose(M, CongruenceMode::ImaginaryPart);

  ComplexMatrix C = M.A + M.B + abs_value(M.X - M.X.adjoint());
  const ComplexMatrix& U = out.decomposition.U;
  const ComplexMatrix& V = out.decomposition.V;
  out.envelope = 0.5 * (U * embed_top(C, dim) * U.adjoint() +
                        V * embed_bottom(C, dim) * V.adjoint());
  out.envelope = re_part(out.envelope);

  ComplexMatrix gap = out.envelope - M.assemble();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(re_part(gap), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("eigensolver failed");
  out.min_gap_eigenvalue = es.eigenvalues()(0);

  double threshold = -1e-10 * (1.0 + M.assemble().norm());
  if (out.min_gap_eigenvalue < threshold) {
    std::ostringstream os;
    os << "envelope fails to dominate: min gap eigenvalue " << out.min_gap_eigenvalue
       << " below " << threshold;
    throw EnvelopeViolation(os.str(), out.min_gap_eigenvalue);
  }
  return out;
}

}  // namespace psdblk
