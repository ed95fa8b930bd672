// SPDX-License-Identifier: Apache-2.0
#include "psdblk/rng.hpp"

#include <cmath>
#include <numbers>

namespace psdblk {

namespace {
constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

uint64_t mix64(uint64_t z) {
  z += kGamma;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

uint64_t SplitMix64::next() {
  uint64_t z = (state_ += kGamma);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::uniform_open() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double SplitMix64::gaussian() {
  // Cosine branch only: no cached second value, so substreams stay aligned.
  double u = uniform_open();
  double v = uniform01();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

std::complex<double> SplitMix64::cgaussian() {
  double re = gaussian();
  double im = gaussian();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

uint64_t derive_seed(uint64_t seed, std::string_view label) {
  return mix64(seed ^ fnv1a64(label));
}

SplitMix64 stream(uint64_t seed, std::string_view label) {
  return SplitMix64(derive_seed(seed, label));
}

}  // namespace psdblk
