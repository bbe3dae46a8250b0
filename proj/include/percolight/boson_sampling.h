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

#ifndef PERCOLIGHT_BOSON_SAMPLING_H
#define PERCOLIGHT_BOSON_SAMPLING_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "percolight/circuit.h"
#include "percolight/rng.h"

namespace percolight {

/// Photon counts over output modes.
using OutcomePattern = std::vector<uint32_t>;
/// Outcome -> probability (or empirical frequency).
using Distribution = std::map<OutcomePattern, double>;

inline constexpr size_t kDefaultOutcomeCap = 1'000'000;

/// Calls `visit` with every occupation vector of `num_modes` entries summing
/// to `total`, in lexicographically decreasing order.
void for_each_pattern(uint32_t total, size_t num_modes, const std::function<void(const OutcomePattern &)> &visit);

/// Number of such patterns, C(total + num_modes - 1, total), saturating.
uint64_t count_patterns(uint32_t total, size_t num_modes);

/// Submatrix of `u` with row r repeated inputs[r] times and column c repeated
/// outcome[c] times.
ComplexMatrix repeated_submatrix(const ComplexMatrix &u, std::span<const uint32_t> inputs, std::span<const uint32_t> outcome);

/// |Per(U_{s,m})|² / (Π m_j! Π s_i!). `u` may be any isometry-like block with
/// rows indexed by input occupation entries and columns by outcome entries.
/// Throws DomainError when Σs ≠ Σm, StructuralError on size mismatch.
double outcome_probability(const ComplexMatrix &u, std::span<const uint32_t> inputs, std::span<const uint32_t> outcome);

/// Exact output distribution over the columns of `u`. Throws ResourceError
/// when the pattern count exceeds `cap` (use sample_component instead).
Distribution exact_component_distribution(
    const ComplexMatrix &u, std::span<const uint32_t> inputs, size_t cap = kDefaultOutcomeCap);

/// Exact sample over the columns of `u` by chain-rule sampling over photons
/// (Clifford & Clifford, algorithm B): rows of the repeated input matrix are
/// randomly permuted, then photon k's output column is drawn with weight
/// |Per(A[1..k], (r_1..r_{k-1}, c))|², the permanents expanded along the last
/// column from the k permanents of the (k-1)-column minors.
OutcomePattern sample_component(const ComplexMatrix &u, std::span<const uint32_t> inputs, Rng &rng);

/// Output mode of a distinguishable photon entering at `source_mode`, drawn
/// with probability |U(v, w)|².
size_t sample_distinguishable(const ComplexMatrix &u, size_t source_mode, Rng &rng);

/// Exact distribution of independent distinguishable photons (one per entry
/// of `sources`, repeated entries allowed) over all columns of `u`.
Distribution distinguishable_distribution(const ComplexMatrix &u, std::span<const size_t> sources);

/// Distribution of the sum of two independent outcome vectors.
Distribution convolve(const Distribution &p, const Distribution &q);

/// Normalized histogram of samples.
Distribution empirical_distribution(const std::vector<OutcomePattern> &samples);

/// (1/2) Σ_m |p(m) - q(m)| over the union of supports.
double tvd(const Distribution &p, const Distribution &q);

double total_probability(const Distribution &p);

/// Hilbert-space dimension bound for a component of at most `y_star` input
/// modes with at most `n_max` photons each: C(Δy* + n·y* - 1, n·y*), plus the
/// relaxation [e(Δ+1)]^{y*} (meaningful for n_max = 1).
struct HilbertDimBound {
    uint64_t exact;
    bool saturated;  // exact overflowed uint64 and was clamped
    double relaxation;
};
HilbertDimBound hilbert_dim_bound(uint64_t y_star, uint64_t delta, uint64_t n_max = 1);

/// Exact binomial coefficient, saturating at UINT64_MAX (flag set).
uint64_t binomial_saturating(uint64_t n, uint64_t k, bool *saturated = nullptr);

}  // namespace percolight

#endif
