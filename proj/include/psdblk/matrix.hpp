// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace psdblk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative tolerance coefficient shared by the Hermitian and PSD tests.
inline constexpr double kDefaultTol = 1e-10;

bool all_finite(const ComplexMatrix& Z);

/// ||Z - Z*||_F for square Z.
double hermitian_residual(const ComplexMatrix& Z);

bool is_hermitian(const ComplexMatrix& Z, double tol = kDefaultTol);

/// Hermitian part (Z + Z*)/2.
ComplexMatrix re_part(const ComplexMatrix& Z);

/// Skew part divided by i: (Z - Z*)/(2i). Hermitian.
ComplexMatrix im_part(const ComplexMatrix& Z);

/// True when every entry has zero imaginary component.
bool is_real(const ComplexMatrix& Z);

ComplexMatrix direct_sum(const ComplexMatrix& A, const ComplexMatrix& B);

}  // namespace psdblk
