// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace psdblk {

uint64_t mix64(uint64_t z);

uint64_t fnv1a64(std::string_view s);

/// SplitMix64: counter-based 64-bit generator. The state advances by a fixed
/// odd constant and each output is a bijective mix of the counter, so streams
/// are reproducible across platforms with pure integer arithmetic.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next();

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform01();

  /// Uniform double in (0, 1], safe as a log argument.
  double uniform_open();

  /// Standard normal via Box-Muller (cosine branch, two draws consumed).
  double gaussian();

  /// Standard complex Gaussian: independent N(0, 1/2) real and imaginary
  /// parts, unit total variance.
  std::complex<double> cgaussian();

 private:
  uint64_t state_;
};

/// Independent substream for (seed, label): mix64(seed ^ fnv1a64(label)).
uint64_t derive_seed(uint64_t seed, std::string_view label);

SplitMix64 stream(uint64_t seed, std::string_view label);

}  // namespace psdblk
