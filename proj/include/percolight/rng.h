// Copyright 2026 The percolight Authors
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

#ifndef PERCOLIGHT_RNG_H
#define PERCOLIGHT_RNG_H

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace percolight {

/// All randomness flows through explicitly seeded 64-bit Mersenne twisters.
/// Only the raw engine output is consumed (never the std distributions, whose
/// algorithms are implementation defined), so streams are bit-reproducible
/// across standard libraries.
using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from a base seed and a tuple of indices
/// (e.g. eta index, N index, trial index). Stream identity depends only on
/// the tuple, never on scheduling.
inline uint64_t derive_seed(uint64_t seed, std::initializer_list<uint64_t> indices) {
    uint64_t h = mix64(seed);
    for (uint64_t k : indices) {
        h = mix64(h ^ mix64(k + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

inline Rng make_stream(uint64_t seed, std::initializer_list<uint64_t> indices) {
    return Rng(derive_seed(seed, indices));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// True with probability p (exactly true for p >= 1, exactly false for p <= 0).
/// Always consumes one engine draw.
inline bool bernoulli(Rng &rng, double p) {
    double u = uniform01(rng);
    return u < p;
}

/// Unbiased uniform integer in [0, n). Requires n > 0.
inline uint64_t uniform_below(Rng &rng, uint64_t n) {
    uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % n;
}

/// Draws an index with probability proportional to weights[i]. Weights need
/// not be normalized but must be nonnegative with a positive sum.
size_t sample_weighted(Rng &rng, std::span<const double> weights);

}  // namespace percolight

#endif
