// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "psdblk/core.hpp"
#include "psdblk/decomposition.hpp"

namespace psdblk {

using Json = nlohmann::json;

/// Canonical serialization: object keys sorted, doubles printed with 17
/// significant digits (exact round-trip), arrays in order, two-space indent,
/// trailing newline. Byte-identical for equal values.
std::string canonical_dump(const Json& j);

/// Same encoding without whitespace; used for fingerprints.
std::string canonical_compact(const Json& j);

/// {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
Json matrix_to_json(const ComplexMatrix& Z);
ComplexMatrix matrix_from_json(const Json& j);

/// {"n": n, "m": m, "A": ..., "X": ..., "B": ...}; provenance left to callers.
Json block_psd_to_json(const BlockPsd& M);

/// Parses and validates; throws ParseError / NotHermitian / NotPsd.
BlockPsd block_psd_from_json(const Json& j, double tol = kDefaultTol);

Json decomposition_to_json(const Decomposition& D);

/// FNV-1a over the canonical compact encoding of the core fields
/// {A, B, X, m, n} (no provenance, so equal matrices hash equal).
uint64_t fingerprint64(const BlockPsd& M);
uint64_t fingerprint64_pair(const ComplexMatrix& S, const ComplexMatrix& T);
std::string fingerprint_hex(uint64_t fp);

}  // namespace psdblk
