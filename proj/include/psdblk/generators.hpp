// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "psdblk/core.hpp"
#include "psdblk/rng.hpp"

namespace psdblk {

/// Structural constraint a generated instance satisfies exactly.
/// CLI names: "any", "hermitian", "normal", "accretive", "range-sep", "real".
enum class GeneratorMode {
  Unconstrained,
  HermitianX,
  NormalX,
  AccretiveX,
  ZeroOutsideRangeX,
  RealEntries,
};

GeneratorMode parse_mode(std::string_view name);
std::string mode_name(GeneratorMode mode);

inline constexpr const char* kGeneratorVersion = "psdblk-gen-1 (splitmix64 + box-muller)";

/// Default distance kept between the assembled matrix and the PSD boundary.
inline constexpr double kInteriorMargin = 0.1;

ComplexMatrix gaussian_matrix(SplitMix64& rng, Index rows, Index cols, bool real_only = false);

/// G*G for a standard complex Gaussian G (real Gaussian when real_only).
ComplexMatrix wishart(SplitMix64& rng, Index dim, bool real_only = false);

/// Haar-distributed unitary: QR of a complex Gaussian with the diagonal of R
/// phase-normalized.
ComplexMatrix haar_unitary(SplitMix64& rng, Index dim);

/// Hermitian matrix with GUE-style Gaussian entries.
ComplexMatrix gaussian_hermitian(SplitMix64& rng, Index dim, bool real_only = false);

/// Seeded instance under the mode's structural constraint. The constraint on
/// X holds exactly by construction; positive semi-definiteness is enforced by
/// adding max(0, margin - lambda_min) * I to both A and B, which leaves X
/// untouched and puts the spectrum at distance >= margin from zero
/// (margin = 0 keeps boundary-rank-deficient instances reachable).
/// Modes other than Unconstrained / RealEntries require n = m.
BlockPsd random_block_psd(Index n, Index m, GeneratorMode mode, uint64_t seed,
                          double margin = kInteriorMargin);

/// The rank-one equality fixture: A = diag(1,0), B = diag(0,1),
/// X = [[0,1],[0,0]]. The assembled matrix has spectrum (2,0,0,0) and X is
/// not normal, which makes it the witness that the Hermitian hypothesis in
/// the majorization bound cannot be dropped.
BlockPsd example_equality();

}  // namespace psdblk
