// src/random.h

// Copyright 2026  unitaccent authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Small helpers on top of std::mt19937_64 whose results do not depend on the
// standard library's distribution implementations.

#ifndef UNITACCENT_SRC_RANDOM_H_
#define UNITACCENT_SRC_RANDOM_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace unitaccent::internal {

using Rng = std::mt19937_64;

/// Uniform in [0, 1) with 53 random bits.
inline double Uniform01(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), n >= 1.
inline std::size_t UniformIndex(Rng &rng, std::size_t n) {
  const auto i = static_cast<std::size_t>(Uniform01(rng) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

/// Standard normal deviate (Box-Muller, one draw per call).
inline double StandardNormal(Rng &rng) {
  const double u1 = 1.0 - Uniform01(rng);  // (0, 1]
  const double u2 = Uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

/// SplitMix64 finaliser; derives independent stream seeds from (seed, tag).
inline std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace unitaccent::internal

#endif  // UNITACCENT_SRC_RANDOM_H_
