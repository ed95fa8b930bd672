// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "psdblk/core.hpp"

namespace psdblk {

/// A pair of unitaries U, V together with the PSD payloads they place in the
/// top-left and bottom-right corners, certifying
///   M = U diag(top, 0) U* + V diag(0, bottom) V*.
struct Decomposition {
  ComplexMatrix U;
  ComplexMatrix V;
  ComplexMatrix top_payload;
  ComplexMatrix bottom_payload;
  double reconstruction_residual = 0.0;
  double unitarity_residual = 0.0;
};

/// Constructive two-unitary decomposition with payloads equal to the corner
/// blocks A and B. Construction: T = sqrt(M); the column blocks T1, T2 of T
/// satisfy M = T1 T1* + T2 T2* and T1*T1 = A, T2*T2 = B; full SVDs of T1 and
/// T2 complete each factor to a square unitary (the bottom factor absorbs the
/// block-swap permutation so its payload lands in the lower-right corner).
Decomposition lemma_decompose(const BlockPsd& M);

enum class CongruenceMode { RealPart, ImaginaryPart };

/// Equal-block-size variant through the rotation congruence
/// J = (1/sqrt 2) [[I, -I], [I, I]]. RealPart places (A+B)/2 + Re X on top
/// and (A+B)/2 - Re X on the bottom; ImaginaryPart first applies the phase
/// congruence diag(I, iI) so the payloads use Im X = (X - X*)/2i instead,
/// with the sign fixed so the top payload is (A+B)/2 + Im X.
Decomposition congruence_decompose(const BlockPsd& M, CongruenceMode mode);

struct LownerEnvelope {
  Decomposition decomposition;  // the ImaginaryPart decomposition used
  ComplexMatrix envelope;
  double min_gap_eigenvalue = 0.0;  // lambda_min(envelope - M)
};

/// Envelope (1/2) { U diag(A+B+|X-X*|, 0) U* + V diag(0, A+B+|X-X*|) V* }
/// built from the ImaginaryPart decomposition; dominates M in the Loewner
/// order because +/- Im X <= |Im X| = |X-X*|/2.
LownerEnvelope lowner_envelope(const BlockPsd& M);

}  // namespace psdblk
