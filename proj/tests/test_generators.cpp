// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "psdblk/core.hpp"
#include "psdblk/errors.hpp"
#include "psdblk/generators.hpp"
#include "psdblk/norms.hpp"

using namespace psdblk;
using doctest::Approx;

TEST_CASE("splitmix64 known-answer vectors") {
  // Published test vectors for the standard splitmix64 stream from seed 0.
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);

  // FNV-1a 64 reference values.
  CHECK(fnv1a64("") == 0xCBF29CE484222325ULL);
  CHECK(fnv1a64("a") == 0xAF63DC4C8601EC8CULL);

  SplitMix64 u(123);
  for (int i = 0; i < 100; ++i) {
    double x = u.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    double y = u.uniform_open();
    CHECK(y > 0.0);
    CHECK(y <= 1.0);
  }

  // Labeled streams are independent and reproducible.
  CHECK(stream(7, "alpha").next() == stream(7, "alpha").next());
  CHECK(stream(7, "alpha").next() != stream(7, "beta").next());
  CHECK(stream(7, "alpha").next() != stream(8, "alpha").next());
}

TEST_CASE("haar_unitary is unitary") {
  SplitMix64 rng = stream(3, "test/haar");
  for (Index d : {1, 2, 5}) {
    ComplexMatrix U = haar_unitary(rng, d);
    CHECK((U.adjoint() * U - ComplexMatrix::Identity(d, d)).norm() <= 1e-12);
  }
}

TEST_CASE("wishart and gaussian_hermitian structure") {
  SplitMix64 rng = stream(4, "test/wishart");
  ComplexMatrix W = wishart(rng, 4);
  CHECK(hermitian_residual(W) == 0.0);
  CHECK(hermitian_eigenvalues_desc(W).minCoeff() >= -1e-12);

  ComplexMatrix Wr = wishart(rng, 4, /*real_only=*/true);
  CHECK(is_real(Wr));

  ComplexMatrix H = gaussian_hermitian(rng, 4);
  CHECK(hermitian_residual(H) == 0.0);
}

TEST_CASE("random_block_psd per-mode structural constraints") {
  for (uint64_t seed : {1u, 2u, 3u}) {
    BlockPsd any = random_block_psd(2, 2, GeneratorMode::Unconstrained, seed);
    CHECK(hermitian_eigenvalues_desc(any.assemble()).minCoeff() >= -1e-12);

    BlockPsd herm = random_block_psd(3, 3, GeneratorMode::HermitianX, seed);
    CHECK((herm.X - herm.X.adjoint()).norm() == 0.0);  // exact, not tolerance
    CHECK(hermitian_eigenvalues_desc(herm.assemble()).minCoeff() >= 0.1 - 1e-12);

    BlockPsd norm = random_block_psd(3, 3, GeneratorMode::NormalX, seed);
    ComplexMatrix comm = norm.X * norm.X.adjoint() - norm.X.adjoint() * norm.X;
    CHECK(comm.norm() <= 1e-12 * norm.X.squaredNorm());

    BlockPsd acc = random_block_psd(3, 3, GeneratorMode::AccretiveX, seed);
    CHECK(hermitian_eigenvalues_desc(re_part(acc.X)).minCoeff() >= -1e-12);

    BlockPsd sep = random_block_psd(2, 2, GeneratorMode::ZeroOutsideRangeX, seed);
    CHECK(classify_zero_vs_range(sep.X).verdict == RangeVerdict::ZeroOutsideRange);

    BlockPsd real = random_block_psd(2, 3, GeneratorMode::RealEntries, seed);
    CHECK(is_real(real.A));
    CHECK(is_real(real.X));
    CHECK(is_real(real.B));
  }

  // All instances pass validation at zero structural tolerance.
  for (GeneratorMode mode : {GeneratorMode::Unconstrained, GeneratorMode::HermitianX,
                             GeneratorMode::NormalX, GeneratorMode::AccretiveX,
                             GeneratorMode::ZeroOutsideRangeX, GeneratorMode::RealEntries}) {
    BlockPsd M = random_block_psd(2, 2, mode, 9);
    CHECK_NOTHROW(validate_block_psd(M.A, M.X, M.B, kDefaultTol));
  }
}

TEST_CASE("margin control and boundary instances") {
  // Default margin keeps instances strictly interior; margin 0 allows the
  // boundary (the shift never overshoots past it).
  BlockPsd inner = random_block_psd(3, 3, GeneratorMode::HermitianX, 12);
  CHECK(hermitian_eigenvalues_desc(inner.assemble()).minCoeff() >= kInteriorMargin - 1e-12);

  BlockPsd edge = random_block_psd(3, 3, GeneratorMode::HermitianX, 12, /*margin=*/0.0);
  double lo = hermitian_eigenvalues_desc(edge.assemble()).minCoeff();
  CHECK(lo >= -1e-12);

  // Same seed, different margin: only the diagonal shift differs, X is shared.
  CHECK((inner.X - edge.X).norm() == 0.0);
}

TEST_CASE("generator determinism and independence") {
  BlockPsd a = random_block_psd(3, 2, GeneratorMode::Unconstrained, 7);
  BlockPsd b = random_block_psd(3, 2, GeneratorMode::Unconstrained, 7);
  CHECK((a.assemble() - b.assemble()).norm() == 0.0);

  BlockPsd c = random_block_psd(3, 2, GeneratorMode::Unconstrained, 8);
  CHECK((a.assemble() - c.assemble()).norm() != 0.0);

  // Mode and dims enter the stream label, so draws do not collide.
  BlockPsd d = random_block_psd(2, 2, GeneratorMode::Unconstrained, 7);
  CHECK((a.A.topLeftCorner(2, 2) - d.A).norm() != 0.0);

  CHECK_THROWS_AS(random_block_psd(2, 3, GeneratorMode::HermitianX, 1),
                  UnsupportedModeDimensions);
  CHECK_THROWS_AS(random_block_psd(2, 3, GeneratorMode::NormalX, 1),
                  UnsupportedModeDimensions);
  CHECK_THROWS_AS(parse_mode("bogus"), ParseError);
  CHECK(parse_mode("range-sep") == GeneratorMode::ZeroOutsideRangeX);
  CHECK(mode_name(GeneratorMode::RealEntries) == "real");
}

TEST_CASE("example_equality fixture") {
  BlockPsd ex = example_equality();
  ComplexMatrix A = ex.A, B = ex.B, X = ex.X;
  CHECK(A(0, 0) == Complex(1, 0));
  CHECK(A(1, 1) == Complex(0, 0));
  CHECK(B(1, 1) == Complex(1, 0));
  CHECK(X(0, 1) == Complex(1, 0));
  CHECK((A + B - ComplexMatrix::Identity(2, 2)).norm() == 0.0);

  // Rank one, trace 2: spectrum (2, 0, 0, 0).
  RealVector ev = hermitian_eigenvalues_desc(ex.assemble());
  CHECK(ev(0) == Approx(2.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(ev(i)) <= 1e-12);

  // X is not normal: XX* = diag(1,0), X*X = diag(0,1).
  ComplexMatrix XXs = X * X.adjoint();
  CHECK(XXs(0, 0) == Complex(1, 0));
  CHECK(XXs(1, 1) == Complex(0, 0));
  ComplexMatrix XsX = X.adjoint() * X;
  CHECK(XsX(1, 1) == Complex(1, 0));
}
