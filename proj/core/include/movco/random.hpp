// Copyright 2026 The MOVCO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MOVCO_RANDOM_HPP
#define MOVCO_RANDOM_HPP

#include <cstdint>
#include <random>

namespace movco {

/// All randomness in the library flows through this engine type.
using Rng = std::mt19937_64;

/// Substream domains. Every random consumer draws from
/// `derive_seed(master, domain, a, b)` so that results never depend on
/// evaluation order or thread scheduling.
///
///   kInit        a = individual index
///   kEvaluation  a = generation, b = individual index
///   kVariation   a = generation
///   kSpsa        a = iteration, b = 0 (+ side) / 1 (- side) / 2 (perturbation)
///   kExtract     re-sampling of the selected individual
///   kInstance    a = instance index within a generated batch
///   kRun         a = instance index within a batch run
enum class Stream : std::uint64_t {
  kInit = 1,
  kEvaluation = 2,
  kVariation = 3,
  kSpsa = 4,
  kExtract = 5,
  kInstance = 6,
  kRun = 7,
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based seed derivation:
///   h = mix64(master); h = mix64(h ^ domain); h = mix64(h ^ a); h = mix64(h ^ b)
std::uint64_t derive_seed(std::uint64_t master, Stream domain, std::uint64_t a = 0,
                          std::uint64_t b = 0);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// The helpers below are written out instead of using <random> distributions,
// whose output is implementation-defined; result files must match across
// standard libraries.

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

/// Uniform double in [lo, hi).
double uniform_real(Rng& rng, double lo, double hi);

/// Unbiased uniform integer in [0, n). n must be positive.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

/// Uniform integer in [lo, hi] inclusive.
int uniform_int(Rng& rng, int lo, int hi);

}  // namespace movco

#endif  // MOVCO_RANDOM_HPP
