// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "psdblk/core.hpp"
#include "psdblk/json_io.hpp"

namespace psdblk {

struct ViolationScore {
  double score = 0.0;
  int worst_k = 0;  // 1-based Ky Fan index achieving the max gap
};

/// score = max over k in [1, 2n-1] of KyFan_k(M) - KyFan_k((A+B) (+) 0).
/// The k = 2n gap is identically zero (trace equality), so it is excluded;
/// score <= 0 still holds iff the Hermitian-X bound survives for every
/// symmetric norm (Ky Fan dominance).
ViolationScore violation_score(const BlockPsd& M);

enum class SearchMethod { RandomRestart, HillClimb };
enum class SearchConstraint { NormalX, HermitianX, Unconstrained };

std::string method_name(SearchMethod m);
std::string constraint_name(SearchConstraint c);
SearchMethod parse_method(std::string_view name);          // "rr" | "hc"
SearchConstraint parse_constraint(std::string_view name);  // "normal" | "hermitian" | "any"

inline constexpr int kHuntChains = 8;

struct HuntConfig {
  Index n = 2;
  SearchMethod method = SearchMethod::HillClimb;
  long iterations = 10000;  // total across chains
  uint64_t seed = 0;
  SearchConstraint constraint = SearchConstraint::NormalX;
  int jobs = 1;
};

struct HistorySample {
  long iteration = 0;  // chain-local index of the improving evaluation
  double score = 0.0;
};

struct SearchRecord {
  double best_score = 0.0;
  int best_k = 0;
  BlockPsd best_instance;
  long iterations = 0;
  uint64_t seed = 0;
  SearchMethod method = SearchMethod::HillClimb;
  SearchConstraint constraint = SearchConstraint::NormalX;
  int chains = kHuntChains;
  int best_chain = 0;
  std::vector<HistorySample> history;  // winning chain's improvements
  bool violation_found = false;
  double reverified_score = 0.0;  // meaningful when violation_found

  Json to_json() const;
};

/// Maximizes violation_score over the constraint class. Constraints hold
/// exactly by parametrization (A = L L*, Hermitian X from its triangle,
/// normal X = W diag(d) W* with W a Cayley unitary); PSD is restored by the
/// zero-margin diagonal shift after every proposal. Chains run independently
/// (fixed count, per-chain derived seeds) so the record does not depend on
/// jobs. A best score above 1e-9 relative is re-verified on the
/// JSON-roundtripped instance, revalidated at 10x tighter tolerance, before
/// violation_found is set.
SearchRecord hunt(const HuntConfig& config);

struct ProbeResult {
  double min_residual = 0.0;
  RealMatrix U;  // best real orthogonal pair found
  RealMatrix V;
  long restarts = 0;
  uint64_t seed = 0;
  std::vector<double> restart_residuals;

  Json to_json() const;
};

/// Minimizes || M - U diag(top, 0) U^T - V diag(0, bottom) V^T ||_F over real
/// orthogonal U, V with the payloads fixed to (A+B)/2 +/- Im X. Riemannian
/// gradient descent with Cayley retraction and Armijo backtracking; restarts
/// cycle the four det-sign component pairs (restart 0 starts at U = V = I).
/// A near-zero residual certifies real-orthogonal feasibility for this
/// instance; a persistently large one is evidence the other way, not proof.
ProbeResult probe_real_decomposition(const BlockPsd& M, long restarts, uint64_t seed);

}  // namespace psdblk
