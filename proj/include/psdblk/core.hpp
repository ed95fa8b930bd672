// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "psdblk/matrix.hpp"

namespace psdblk {

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted
/// decreasing and the eigenvector columns matching that order.
struct SpectralData {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

/// A positive semi-definite matrix in 2x2 block form [[A, X], [X*, B]].
/// A is n x n, B is m x m, X is n x m. Construct untrusted data through
/// validate_block_psd; generators build instances that satisfy the
/// invariants by construction.
struct BlockPsd {
  Index n = 0;
  Index m = 0;
  ComplexMatrix A;
  ComplexMatrix X;
  ComplexMatrix B;

  ComplexMatrix assemble() const;
  Index dim() const { return n + m; }
};

/// Checks dimensions, Hermitian corners, and positive semi-definiteness of
/// the assembled matrix. A and B are stored symmetrized. The PSD threshold
/// is lambda_min >= -tol * (1 + max |lambda|).
BlockPsd validate_block_psd(const ComplexMatrix& A, const ComplexMatrix& X,
                            const ComplexMatrix& B, double tol = kDefaultTol);

/// Hermitian eigendecomposition, eigenvalues decreasing. Inputs within the
/// Hermitian tolerance are symmetrized as (Z+Z*)/2 before solving.
SpectralData eig_hermitian_desc(const ComplexMatrix& Z);

/// Principal square root of a PSD matrix. Eigenvalues in [-tau, 0) with
/// tau = kDefaultTol * (1 + lambda_max) are clamped to zero.
ComplexMatrix sqrt_psd(const ComplexMatrix& Z);

/// Spectral power Z^p for Hermitian PSD Z and p > 0.
ComplexMatrix matrix_power_psd(const ComplexMatrix& Z, double p);

/// |Z| = (Z*Z)^{1/2} for arbitrary square Z.
ComplexMatrix abs_value(const ComplexMatrix& Z);

/// Eigenvalues of the Hermitian part of Z, sorted decreasing.
RealVector hermitian_eigenvalues_desc(const ComplexMatrix& Z);

}  // namespace psdblk
