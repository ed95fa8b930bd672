// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "psdblk/errors.hpp"
#include "psdblk/generators.hpp"
#include "psdblk/json_io.hpp"

using namespace psdblk;
using doctest::Approx;

TEST_CASE("canonical dump is sorted, exact, and stable") {
  Json j;
  j["zeta"] = 1.0;
  j["alpha"] = 0.1;  // not exactly representable; 17 digits round-trip
  std::string s = canonical_dump(j);
  CHECK(s.find("alpha") < s.find("zeta"));
  CHECK(s.back() == '\n');
  CHECK(s.find("0.10000000000000001") != std::string::npos);

  Json back = Json::parse(s);
  CHECK(back["alpha"].get<double>() == 0.1);

  // Key insertion order must not affect the canonical bytes.
  Json j2;
  j2["alpha"] = 0.1;
  j2["zeta"] = 1.0;
  CHECK(canonical_dump(j2) == s);
  CHECK(canonical_compact(j) == canonical_compact(j2));
  CHECK(canonical_compact(j).find(' ') == std::string::npos);
  CHECK(canonical_compact(j).find('\n') == std::string::npos);
}

TEST_CASE("matrix json round trip") {
  SplitMix64 rng = stream(3, "test/json-mat");
  ComplexMatrix Z = gaussian_matrix(rng, 2, 3);
  Json j = matrix_to_json(Z);
  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 3);
  CHECK(j["data"].size() == 6);
  ComplexMatrix back = matrix_from_json(j);
  CHECK((back - Z).norm() == 0.0);  // 17-digit doubles are exact

  Json bad = j;
  bad["data"] = Json::array({Json::array({1.0, 0.0})});
  CHECK_THROWS_AS(matrix_from_json(bad), ParseError);
  Json noRows = j;
  noRows.erase("rows");
  CHECK_THROWS_AS(matrix_from_json(noRows), ParseError);
}

TEST_CASE("block psd json round trip and validation") {
  BlockPsd M = random_block_psd(3, 2, GeneratorMode::Unconstrained, 17);
  Json j = block_psd_to_json(M);
  BlockPsd back = block_psd_from_json(j);
  CHECK((back.assemble() - M.assemble()).norm() == 0.0);
  CHECK(back.n == 3);
  CHECK(back.m == 2);

  // Extra provenance keys are carried by callers and ignored by the parser.
  Json annotated = j;
  annotated["provenance"] = {{"mode", "any"}, {"seed", 17}};
  CHECK(fingerprint64(block_psd_from_json(annotated)) == fingerprint64(M));

  Json mismatch = j;
  mismatch["n"] = 4;
  CHECK_THROWS_AS(block_psd_from_json(mismatch), ParseError);

  // A non-PSD assembled matrix must be rejected on parse.
  BlockPsd bad = M;
  bad.A = -ComplexMatrix::Identity(3, 3);
  CHECK_THROWS_AS(block_psd_from_json(block_psd_to_json(bad)), NotPsd);

  CHECK_THROWS_AS(block_psd_from_json(Json::array()), ParseError);
}

TEST_CASE("fingerprints depend on values only") {
  BlockPsd M1 = random_block_psd(2, 2, GeneratorMode::HermitianX, 5);
  BlockPsd M2 = random_block_psd(2, 2, GeneratorMode::HermitianX, 5);
  BlockPsd M3 = random_block_psd(2, 2, GeneratorMode::HermitianX, 6);
  CHECK(fingerprint64(M1) == fingerprint64(M2));
  CHECK(fingerprint64(M1) != fingerprint64(M3));

  std::string hex = fingerprint_hex(fingerprint64(M1));
  CHECK(hex.size() == 16);
  CHECK(hex.find_first_not_of("0123456789abcdef") == std::string::npos);

  ComplexMatrix S = M1.A, T = M1.B;
  CHECK(fingerprint64_pair(S, T) != fingerprint64_pair(T, S));
}

TEST_CASE("decomposition json carries all certificate fields") {
  BlockPsd M = random_block_psd(2, 2, GeneratorMode::Unconstrained, 9);
  Decomposition D = lemma_decompose(M);
  Json j = decomposition_to_json(D);
  for (const char* key : {"U", "V", "top", "bottom", "reconstruction_residual",
                          "unitarity_residual"}) {
    CHECK(j.contains(key));
  }
  ComplexMatrix U = matrix_from_json(j["U"]);
  CHECK((U - D.U).norm() == 0.0);
  CHECK(j["reconstruction_residual"].get<double>() == D.reconstruction_residual);
}
