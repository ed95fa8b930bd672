// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "psdblk/checks.hpp"
#include "psdblk/errors.hpp"
#include "psdblk/generators.hpp"
#include "psdblk/json_io.hpp"
#include "psdblk/norms.hpp"

using namespace psdblk;
using doctest::Approx;

namespace {

const CheckReport& row(const std::vector<CheckReport>& rows, const std::string& norm) {
  for (const CheckReport& r : rows) {
    if (r.norm == norm) return r;
  }
  REQUIRE_MESSAGE(false, "no row for norm " << norm);
  static CheckReport dummy;
  return dummy;
}

BlockPsd blocks(const ComplexMatrix& A, const ComplexMatrix& X, const ComplexMatrix& B) {
  BlockPsd M;
  M.n = A.rows();
  M.m = B.rows();
  M.A = A;
  M.X = X;
  M.B = B;
  return M;
}

ComplexMatrix cdiag(double a, double b) {
  ComplexMatrix Z = ComplexMatrix::Zero(2, 2);
  Z(0, 0) = a;
  Z(1, 1) = b;
  return Z;
}

const ComplexMatrix kI2 = ComplexMatrix::Identity(2, 2);

bool all_pass(const std::vector<CheckReport>& rows) {
  for (const CheckReport& r : rows) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("check_lw") {
  NormBattery bat = NormBattery::default_for(4);

  // X = 0, A = B = I: prefix sums (1,2,3,4) against (2,4,4,4).
  BlockPsd triv = blocks(kI2, ComplexMatrix::Zero(2, 2), kI2);
  std::vector<CheckReport> rows = check_lw(triv, bat);
  CHECK(rows.size() == bat.kinds.size() + 1);
  CHECK(all_pass(rows));
  CHECK(row(rows, "kf:1").lhs == Approx(1.0));
  CHECK(row(rows, "kf:1").rhs == Approx(2.0));
  CHECK(row(rows, "kf:4").lhs == Approx(4.0));
  CHECK(row(rows, "kf:4").rhs == Approx(4.0));
  CHECK(row(rows, "maj").lhs == Approx(0.0).scale(1.0).epsilon(1e-12));

  // Hermitian-X property sample.
  for (uint64_t seed : {60u, 61u, 62u}) {
    BlockPsd M = random_block_psd(3, 3, GeneratorMode::HermitianX, seed);
    std::vector<CheckReport> r = check_lw(M, NormBattery::default_for(6));
    CHECK(all_pass(r));
    for (const CheckReport& c : r) CHECK(c.precondition_met);
  }

  // Equality fixture: non-Hermitian X, recorded Ky Fan 1 violation of size 1.
  std::vector<CheckReport> ex = check_lw(example_equality(), bat);
  for (const CheckReport& c : ex) {
    CHECK_FALSE(c.precondition_met);
    CHECK(c.pass);  // vacuous
  }
  CHECK(row(ex, "kf:1").lhs == Approx(2.0).epsilon(1e-12));
  CHECK(row(ex, "kf:1").rhs == Approx(1.0).epsilon(1e-12));
  CHECK(row(ex, "kf:1").margin == Approx(-1.0).epsilon(1e-12));
  CHECK(row(ex, "maj").lhs == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("check_cor_p") {
  NormBattery bat = NormBattery::default_for(4);

  // Equality fixture at p = 2, operator norm: 4 on both sides.
  std::vector<CheckReport> ex = check_cor_p(example_equality(), 2.0, bat);
  CHECK(row(ex, "op").lhs == Approx(4.0).epsilon(1e-10));
  CHECK(row(ex, "op").rhs == Approx(4.0).epsilon(1e-10));
  CHECK(all_pass(ex));

  // A = B = diag(1,2), X = 0, p = 1/2, trace norm: both sides 2 + 2 sqrt 2.
  BlockPsd d = blocks(cdiag(1, 2), ComplexMatrix::Zero(2, 2), cdiag(1, 2));
  std::vector<CheckReport> half = check_cor_p(d, 0.5, bat);
  const double expect = 2.0 + 2.0 * std::numbers::sqrt2;
  CHECK(row(half, "tr").lhs == Approx(expect).epsilon(1e-10));
  CHECK(row(half, "tr").rhs == Approx(expect).epsilon(1e-10));

  // p = 1: the factor is 1 and the rhs is the plain triangle-type bound.
  BlockPsd M = random_block_psd(3, 3, GeneratorMode::Unconstrained, 63);
  std::vector<CheckReport> one = check_cor_p(M, 1.0, NormBattery::default_for(6));
  double direct = hermitian_sv(M.A + M.B).sum() + singular_values(M.X - M.X.adjoint()).sum();
  CHECK(row(one, "tr").rhs == Approx(direct).epsilon(1e-10));
  CHECK(all_pass(one));

  // Property across exponents on a generic instance.
  for (double p : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    CHECK(all_pass(check_cor_p(M, p, NormBattery::default_for(6))));
  }

  CHECK_THROWS_AS(check_cor_p(M, 0.0, bat), NonpositiveExponent);
  CHECK_THROWS_AS(check_cor_p(M, -1.0, bat), NonpositiveExponent);
}

TEST_CASE("concave function tags") {
  ConcaveFunction sq = ConcaveFunction::parse("pow:0.5");
  CHECK(sq(4.0) == Approx(2.0));
  CHECK(sq(0.0) == 0.0);
  CHECK(sq.name() == "pow:0.5");
  CHECK(ConcaveFunction::parse("log1p")(std::numbers::e - 1.0) == Approx(1.0));
  CHECK(ConcaveFunction::parse("ratio")(1.0) == Approx(0.5));
  CHECK_THROWS_AS(ConcaveFunction::parse("pow:1.5"), UnknownFunctionTag);
  CHECK_THROWS_AS(ConcaveFunction::parse("pow:0"), UnknownFunctionTag);
  CHECK_THROWS_AS(ConcaveFunction::parse("cube"), UnknownFunctionTag);
}

TEST_CASE("check_subadditivity") {
  ConcaveFunction sq = ConcaveFunction::power(0.5);
  SplitMix64 rng = stream(64, "test/subadd");
  ComplexMatrix S = wishart(rng, 4);

  // T = 0: equality sequence-wise, worst gap 0.
  CheckReport zero = check_subadditivity(S, ComplexMatrix::Zero(4, 4), sq);
  CHECK(zero.norm == "maj");
  CHECK(zero.lhs == Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(zero.pass);

  // S = T = I: sqrt(2) per eigenvalue against 2, slack 2 - sqrt(2) at k=1.
  CheckReport id = check_subadditivity(kI2, kI2, sq);
  CHECK(id.pass);
  CHECK(id.lhs == Approx(std::numbers::sqrt2 - 2.0).epsilon(1e-12));

  // Random PSD pairs, all three function tags.
  for (const char* tag : {"pow:0.5", "pow:1", "log1p", "ratio"}) {
    ComplexMatrix S6 = wishart(rng, 6);
    ComplexMatrix T6 = wishart(rng, 6);
    CheckReport r = check_subadditivity(S6, T6, ConcaveFunction::parse(tag));
    CHECK(r.pass);
    CHECK(r.precondition_met);
  }

  CHECK_THROWS_AS(check_subadditivity(-kI2, kI2, sq), NotPsd);
  CHECK_THROWS_AS(check_subadditivity(S, wishart(rng, 3), sq), DimensionMismatch);
}

TEST_CASE("check_elem1") {
  NormBattery bat = NormBattery::default_for(2);
  SplitMix64 rng = stream(65, "test/elem1");

  // S = T: equality for every norm.
  ComplexMatrix S = wishart(rng, 3);
  for (const CheckReport& r : check_elem1(S, S, 2.0, NormBattery::default_for(3))) {
    CHECK(r.margin == Approx(0.0).scale(1.0 + r.rhs).epsilon(1e-10));
    CHECK(r.pass);
  }

  // S = diag(2,0), T = diag(0,2), p = 2, trace: 2 against 4.
  std::vector<CheckReport> d = check_elem1(cdiag(2, 0), cdiag(0, 2), 2.0, bat);
  CHECK(row(d, "tr").lhs == Approx(2.0));
  CHECK(row(d, "tr").rhs == Approx(4.0));
  CHECK(all_pass(d));

  // Property at non-integer exponent.
  for (uint64_t s : {1u, 2u}) {
    SplitMix64 g = stream(s, "test/elem1-prop");
    CHECK(all_pass(check_elem1(wishart(g, 4), wishart(g, 4), 1.5, NormBattery::default_for(4))));
  }

  CHECK_THROWS_AS(check_elem1(S, S, 0.9, NormBattery::default_for(3)), ExponentBelowOne);
  CHECK_THROWS_AS(check_elem1(-kI2, kI2, 2.0, bat), NotPsd);
}

TEST_CASE("check_accretive") {
  NormBattery bat = NormBattery::default_for(4);

  // X = I, A = B = I: spectrum (2,2,0,0); operator row 2 against 3.
  BlockPsd M = blocks(kI2, kI2, kI2);
  std::vector<CheckReport> rows = check_accretive(M, bat);
  CHECK(all_pass(rows));
  CHECK(row(rows, "op").lhs == Approx(2.0).epsilon(1e-12));
  CHECK(row(rows, "op").rhs == Approx(3.0).epsilon(1e-12));
  CHECK(row(rows, "maj").lhs == Approx(-1.0).epsilon(1e-12));
  for (const CheckReport& r : rows) CHECK(r.precondition_met);

  // X = 0 reduces to the Hermitian-X bound: margins match check_lw row by row.
  BlockPsd M0 = random_block_psd(3, 3, GeneratorMode::HermitianX, 66);
  M0.X.setZero();
  NormBattery b6 = NormBattery::default_for(6);
  std::vector<CheckReport> acc = check_accretive(M0, b6);
  std::vector<CheckReport> lw = check_lw(M0, b6);
  for (const NormKind& kind : b6.kinds) {
    CHECK(row(acc, kind.str()).margin ==
          Approx(row(lw, kind.str()).margin).scale(1.0).epsilon(1e-10));
  }

  // Random accretive instances pass with the precondition met.
  for (uint64_t seed : {67u, 68u}) {
    BlockPsd Ma = random_block_psd(3, 3, GeneratorMode::AccretiveX, seed);
    std::vector<CheckReport> r = check_accretive(Ma, b6);
    CHECK(all_pass(r));
    for (const CheckReport& c : r) CHECK(c.precondition_met);
  }

  // Non-accretive X is evaluated with the flag down.
  BlockPsd bad = blocks(2.0 * kI2, -kI2, 2.0 * kI2);
  for (const CheckReport& c : check_accretive(bad, bat)) {
    CHECK_FALSE(c.precondition_met);
    CHECK(c.pass);
  }
}

TEST_CASE("check_range_modes") {
  NormBattery bat = NormBattery::default_for(4);

  // Equality fixture under the unconditional bound: 2 against 1 + 2*(1/2).
  std::vector<CheckReport> ex = check_range_modes(example_equality(), RangeMode::Unconditional2w, bat);
  REQUIRE(ex.size() == 1);
  CHECK(ex[0].norm == "op");
  CHECK(ex[0].lhs == Approx(2.0).epsilon(1e-10));
  CHECK(ex[0].rhs == Approx(2.0).epsilon(1e-10));
  CHECK(ex[0].pass);
  CHECK(ex[0].precondition_met);

  // X = I (0 outside W), full battery: operator row 2 against 3.
  BlockPsd far = blocks(kI2, kI2, kI2);
  std::vector<CheckReport> full = check_range_modes(far, RangeMode::FullRange, bat);
  CHECK(full.size() == bat.kinds.size());
  CHECK(all_pass(full));
  CHECK(row(full, "op").lhs == Approx(2.0).epsilon(1e-10));
  CHECK(row(full, "op").rhs == Approx(3.0).epsilon(1e-10));
  for (const CheckReport& c : full) CHECK(c.precondition_met);

  // Jordan-block X: 0 is interior to W, so the interior modes are vacuous.
  std::vector<CheckReport> rel =
      check_range_modes(example_equality(), RangeMode::RelativeInterior, bat);
  REQUIRE(rel.size() == 1);
  CHECK_FALSE(rel[0].precondition_met);
  CHECK(rel[0].pass);
  std::vector<CheckReport> fullJ =
      check_range_modes(example_equality(), RangeMode::FullRange, bat);
  for (const CheckReport& c : fullJ) CHECK_FALSE(c.precondition_met);

  // Monotonicity: rhs with 2w dominates rhs with w on the same instance.
  for (uint64_t seed : {70u, 71u}) {
    BlockPsd M = random_block_psd(3, 3, GeneratorMode::ZeroOutsideRangeX, seed);
    NormBattery b6 = NormBattery::default_for(6);
    std::vector<CheckReport> r1 = check_range_modes(M, RangeMode::RelativeInterior, b6);
    std::vector<CheckReport> r2 = check_range_modes(M, RangeMode::Unconditional2w, b6);
    CHECK(r1[0].precondition_met);
    CHECK(r2[0].rhs >= r1[0].rhs);
    CHECK(r1[0].pass);
    CHECK(r2[0].pass);
    CHECK(all_pass(check_range_modes(M, RangeMode::FullRange, b6)));
  }

  CHECK(range_mode_name(RangeMode::FullRange) == "range:full");
  BlockPsd rect = random_block_psd(2, 3, GeneratorMode::Unconstrained, 72);
  CHECK_THROWS_AS(check_range_modes(rect, RangeMode::FullRange, bat), UnequalBlockSizes);
}

TEST_CASE("check_direct_sum") {
  NormBattery bat = NormBattery::default_for(4);

  // A = X = B = I: operator equality 2 = 2.
  BlockPsd M = blocks(kI2, kI2, kI2);
  std::vector<CheckReport> rows = check_direct_sum(M, bat);
  CHECK(all_pass(rows));
  CHECK(row(rows, "op").lhs == Approx(2.0).epsilon(1e-12));
  CHECK(row(rows, "op").rhs == Approx(2.0).epsilon(1e-12));

  // X = 0: block-diagonal, so the operator norm shows the full factor-2
  // slack while the trace norm sits at equality.
  BlockPsd M0 = blocks(kI2, ComplexMatrix::Zero(2, 2), 2.0 * kI2);
  std::vector<CheckReport> z = check_direct_sum(M0, bat);
  CHECK(all_pass(z));
  CHECK(row(z, "op").rhs == Approx(2.0 * row(z, "op").lhs).epsilon(1e-12));
  CHECK(row(z, "tr").rhs == Approx(row(z, "tr").lhs).epsilon(1e-12));

  for (uint64_t seed : {73u, 74u}) {
    BlockPsd Mr = random_block_psd(3, 3, GeneratorMode::Unconstrained, seed);
    CHECK(all_pass(check_direct_sum(Mr, NormBattery::default_for(6))));
  }

  BlockPsd rect = random_block_psd(3, 2, GeneratorMode::Unconstrained, 75);
  CHECK_THROWS_AS(check_direct_sum(rect, bat), UnequalBlockSizes);
}

TEST_CASE("check_schatten") {
  // A = X = B = I, p = 2: sqrt(8) on both sides.
  BlockPsd M = blocks(kI2, kI2, kI2);
  CheckReport r2 = check_schatten(M, 2.0);
  CHECK(r2.lhs == Approx(std::sqrt(8.0)).epsilon(1e-12));
  CHECK(r2.rhs == Approx(std::sqrt(8.0)).epsilon(1e-12));
  CHECK(r2.pass);
  CHECK(r2.norm == "s:2");

  // X = 0, p = 1: trace norm of a PSD block-diagonal equals tr A + tr B.
  BlockPsd M0 = blocks(cdiag(1, 2), ComplexMatrix::Zero(2, 2), cdiag(3, 4));
  CheckReport r1 = check_schatten(M0, 1.0);
  CHECK(r1.lhs == Approx(10.0).epsilon(1e-12));
  CHECK(r1.rhs == Approx(10.0).epsilon(1e-12));

  // Rectangular blocks are fine here.
  BlockPsd rect = random_block_psd(2, 4, GeneratorMode::Unconstrained, 76);
  CHECK(check_schatten(rect, 3.0).pass);

  CHECK_THROWS_AS(check_schatten(M, 0.99), ExponentBelowOne);
}

TEST_CASE("run_suite determinism and aggregation") {
  SuiteConfig cfg;
  cfg.dims = {{2, 2}};
  cfg.trials = 2;
  cfg.seed = 7;

  SuiteReport a = run_suite(cfg);
  SuiteReport b = run_suite(cfg);
  CHECK(canonical_dump(a.to_json()) == canonical_dump(b.to_json()));
  CHECK(a.violations == 0);

  // Scheduling must not leak into the report.
  SuiteConfig par = cfg;
  par.jobs = 3;
  CHECK(canonical_dump(run_suite(par).to_json()) == canonical_dump(a.to_json()));

  for (const SuiteRow& row : a.rows) {
    CHECK(row.trials == 2);
    CHECK(row.passes == 2);
    CHECK(row.worst_trial >= 0);
    CHECK(row.worst_fingerprint.size() == 16);
    CHECK(row.worst_instance.is_object());
  }

  Json j = a.to_json();
  CHECK(j["violations"] == 0);
  CHECK(j["config"]["seed"] == 7);
  CHECK(j["config"]["trials"] == 2);
  CHECK_FALSE(j["config"].contains("jobs"));
  CHECK(j["generator_version"] == kGeneratorVersion);
  REQUIRE(j["rows"].is_array());
  const Json& r0 = j["rows"][0];
  for (const char* key : {"id", "norm", "trials", "passes", "min_margin", "worst_instance"}) {
    CHECK(r0.contains(key));
  }

  // Worst instances replay: re-running the named check on the recorded
  // instance reproduces the aggregated min margin.
  for (const SuiteRow& row : a.rows) {
    if (row.id != "lw" || row.norm != "op") continue;
    BlockPsd worst = block_psd_from_json(row.worst_instance);
    std::vector<CheckReport> rr = check_lw(worst, NormBattery::parse(cfg.battery_spec, 4));
    bool found = false;
    for (const CheckReport& c : rr) {
      if (c.norm == "op") {
        CHECK(c.margin == Approx(row.min_margin).scale(1.0).epsilon(1e-12));
        found = true;
      }
    }
    CHECK(found);
  }

  CHECK_THROWS_AS(run_suite(SuiteConfig{.dims = {{2, 2}}, .trials = 0}), EmptyInput);
  CHECK_THROWS_AS(run_suite(SuiteConfig{.dims = {}, .trials = 1}), EmptyInput);
}

TEST_CASE("run_suite full csv and non-square dims") {
  SuiteConfig cfg;
  cfg.dims = {{3, 2}, {2, 2}};  // square-only checks keep the square entry
  cfg.trials = 2;
  cfg.seed = 3;
  cfg.full = true;
  cfg.battery_spec = "op,tr";

  SuiteReport rep = run_suite(cfg);
  CHECK(rep.csv.rfind("id,norm,trial,fingerprint,precondition_met,lhs,rhs,margin,pass\n", 0) == 0);
  CHECK(rep.csv.find("schatten:1,") != std::string::npos);
  CHECK(rep.csv.find("subadd:log1p,") != std::string::npos);
  CHECK(rep.csv.find("lw,") != std::string::npos);
  CHECK(rep.violations == 0);

  // Square-only checks only ever see the square dims entry.
  for (const SuiteRow& row : rep.rows) {
    if (row.id != "lw" && row.id != "direct_sum") continue;
    REQUIRE(row.worst_instance.is_object());
    CHECK(row.worst_instance["n"] == row.worst_instance["m"]);
  }
  // Pair checks persist the pair, not a block instance.
  for (const SuiteRow& row : rep.rows) {
    if (row.id.rfind("elem1", 0) != 0) continue;
    CHECK(row.worst_instance.contains("S"));
    CHECK(row.worst_instance.contains("T"));
  }

  // A dims list with no square entry starves the square-only checks.
  SuiteConfig bad = cfg;
  bad.dims = {{2, 3}, {4, 2}};
  CHECK_THROWS_AS(run_suite(bad), UnsupportedModeDimensions);
}
