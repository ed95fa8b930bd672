// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "psdblk/core.hpp"
#include "psdblk/json_io.hpp"
#include "psdblk/norms.hpp"

namespace psdblk {

/// One verified inequality on one instance under one norm. The pseudo-norm
/// tag "maj" marks the weak-majorization core of a check: there
/// lhs = worst prefix gap, rhs = 0.
struct CheckReport {
  std::string id;
  std::string norm;
  uint64_t fingerprint = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool pass = false;
  bool precondition_met = true;
};

inline double check_epsilon(double rhs) { return 1e-9 * (1.0 + std::abs(rhs)); }

/// margin = rhs - lhs; pass iff margin >= -check_epsilon(rhs), vacuously true
/// when the precondition failed (values still recorded).
CheckReport make_check_report(std::string id, std::string norm, uint64_t fingerprint,
                              double lhs, double rhs, bool precondition_met);

/// ||[[A,X],[X,B]]|| <= ||A+B|| for Hermitian X: battery rows plus the "maj"
/// row testing lambda(M) against lambda(A+B) padded. Non-Hermitian X is
/// evaluated anyway with precondition_met = false.
std::vector<CheckReport> check_lw(const BlockPsd& M, const NormBattery& battery);

/// ||M^p|| <= 2^{|p-1|} ( ||(A+B)^p|| + || |X-X*|^p || ), p > 0.
std::vector<CheckReport> check_cor_p(const BlockPsd& M, double p, const NormBattery& battery);

/// Concave f: [0,inf) -> [0,inf) with f(0) = 0, applied spectrally.
struct ConcaveFunction {
  enum class Tag { Power, Log1p, Ratio };
  Tag tag = Tag::Power;
  double p = 1.0;  // Power only, p in (0, 1]

  static ConcaveFunction power(double p);
  static ConcaveFunction log1p();   // log(1+t)
  static ConcaveFunction ratio();   // t/(1+t)
  static ConcaveFunction parse(std::string_view name);

  double operator()(double t) const;
  std::string name() const;
};

/// lambda(f(S+T)) weakly majorized by sorted lambda(f(S)) + lambda(f(T)).
CheckReport check_subadditivity(const ComplexMatrix& S, const ComplexMatrix& T,
                                const ConcaveFunction& f);

/// ||((S+T)/2)^p|| <= (||S^p|| + ||T^p||)/2 for PSD S, T and p >= 1.
std::vector<CheckReport> check_elem1(const ComplexMatrix& S, const ComplexMatrix& T,
                                     double p, const NormBattery& battery);

/// ||M|| <= ||A+B|| + ||Re X|| for accretive X (Re X PSD), plus the "maj"
/// row sigma(M) vs sorted lambda(A+B) + sorted lambda(Re X) padded.
std::vector<CheckReport> check_accretive(const BlockPsd& M, const NormBattery& battery);

enum class RangeMode { FullRange, RelativeInterior, Unconditional2w };

std::string range_mode_name(RangeMode mode);

/// FullRange  (0 outside W(X)):          ||M|| <= ||A+B|| + ||X||, all norms.
/// RelativeInterior (0 not interior):    ||M||_op <= ||A+B||_op + w(X).
/// Unconditional2w (no precondition):    ||M||_op <= ||A+B||_op + 2 w(X).
std::vector<CheckReport> check_range_modes(const BlockPsd& M, RangeMode mode,
                                           const NormBattery& battery);

/// ||M (+) M|| <= 2 ||A (+) B||; direct sums are handled on the singular
/// value vectors (duplication), never materialized.
std::vector<CheckReport> check_direct_sum(const BlockPsd& M, const NormBattery& battery);

/// ||M||_p <= 2^{1-1/p} (||A||_p^p + ||B||_p^p)^{1/p}, p >= 1.
CheckReport check_schatten(const BlockPsd& M, double p);

/// ---- suite driver ----

struct SuiteConfig {
  std::vector<std::pair<Index, Index>> dims = {{2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}};
  long trials = 100;
  uint64_t seed = 0;
  std::string battery_spec = "default";
  bool boundary = false;  // PSD-repair margin 0 instead of 0.1
  int jobs = 1;
  bool full = false;  // collect per-trial CSV rows
};

/// Aggregate of one (check, norm) cell across all trials.
struct SuiteRow {
  std::string id;
  std::string norm;
  long trials = 0;
  long passes = 0;
  long precondition_met = 0;
  double min_margin = 0.0;  // over precondition-met trials (all, if none met)
  long worst_trial = -1;
  std::string worst_fingerprint;
  Json worst_instance;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<SuiteRow> rows;
  long violations = 0;  // precondition-met failures across all trials
  std::string csv;      // filled when config.full

  Json to_json() const;
};

/// Deterministic verification campaign: per-trial streams are derived as
/// hash(seed, check id, trial), dims cycle per trial, and aggregation is
/// order-independent (min with lowest-trial tie-break), so the report is
/// byte-identical under any jobs count.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace psdblk
