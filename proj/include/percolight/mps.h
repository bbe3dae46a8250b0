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

#ifndef PERCOLIGHT_MPS_H
#define PERCOLIGHT_MPS_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "percolight/boson_sampling.h"
#include "percolight/circuit.h"
#include "percolight/rng.h"

namespace percolight {

/// Single-mode input Σ_n c_n |n⟩, normalized.
struct GeneralInputState {
    std::vector<Complex> amplitudes;

    static GeneralInputState fock(uint32_t n);
    static GeneralInputState vacuum() { return fock(0); }
    uint32_t max_photon() const;
};

/// Two-mode Fock-space matrix of a beam splitter, truncated to `local_dim`
/// levels per mode. Index (p·d + q, n1·d + n2) maps |n1, n2⟩ to |p, q⟩.
/// Components with more than local_dim - 1 photons in one mode are dropped.
ComplexMatrix fock_two_mode_gate(const Eigen::Matrix2cd &gate, size_t local_dim);

struct MpsOptions {
    size_t max_bond = 4096;
};

/// Open-boundary matrix product state over optical modes.
///
/// Site k holds local_dim matrices of shape (χ_{k-1} × χ_k). The state is kept
/// in mixed-canonical form around `center`. Singular values at or below
/// 1e-12 of the largest are exact numerical zeros and are always dropped;
/// anything else is dropped only when below the caller's threshold, and the
/// dropped weight is accumulated.
class MpsState {
   public:
    /// Product state. Throws ParameterError when local_dim <= n_max of any mode.
    static MpsState from_input(std::span<const GeneralInputState> modes, size_t local_dim, MpsOptions options = {});
    static MpsState from_fock(std::span<const uint32_t> occupations, size_t local_dim, MpsOptions options = {});

    /// Applies a beam splitter on modes (i, j); non-adjacent modes are brought
    /// together with a swap network that is unwound afterwards.
    void apply_beamsplitter(const Eigen::Matrix2cd &gate, size_t i, size_t j, double trunc_threshold = 0);
    void apply_circuit(const Circuit &circuit, double trunc_threshold = 0);

    size_t num_modes() const { return sites_.size(); }
    size_t local_dim() const { return local_dim_; }
    /// χ_1 .. χ_{M-1}.
    std::vector<size_t> bond_dims() const;
    size_t max_bond_seen() const { return max_bond_seen_; }
    double discarded_weight() const { return discarded_weight_; }

    double norm() const;
    /// Dense amplitudes, mode 0 most significant: index Σ n_k d^{M-1-k}.
    Eigen::VectorXcd to_dense() const;

    /// Left-to-right sampling from exact conditional marginals.
    OutcomePattern sample(Rng &rng) const;

    /// {"max_bond":..,"discarded_weight":..,"bond_dims":[..]}
    std::string profile_json() const;

   private:
    using Site = std::vector<ComplexMatrix>;

    void move_center(size_t target);
    void apply_two_site(const ComplexMatrix &fock_gate, size_t left, double trunc_threshold);

    std::vector<Site> sites_;
    size_t local_dim_ = 0;
    size_t center_ = 0;
    size_t max_bond_seen_ = 1;
    double discarded_weight_ = 0;
    MpsOptions options_;
};

/// Dense output state of a linear-optical circuit by permanents: the input
/// product state is expanded in Fock configurations s and each ⟨m|U|s⟩ is
/// Per(U_{s,m}) / sqrt(Π s! Π m!). Same index layout as MpsState::to_dense.
Eigen::VectorXcd dense_output_state(
    const ComplexMatrix &u, std::span<const GeneralInputState> modes, size_t local_dim);

/// Number of singular values above `tolerance` across the cut between modes
/// [0, cut) and [cut, M).
size_t schmidt_rank(const Eigen::VectorXcd &state, size_t num_modes, size_t local_dim, size_t cut, double tolerance = 1e-10);

struct SchmidtCheck {
    size_t rank;
    uint64_t bound;
    bool within_bound;
};

/// Schmidt rank at `cut` compared against `bound`.
SchmidtCheck schmidt_rank_check(
    const Eigen::VectorXcd &state, size_t num_modes, size_t local_dim, size_t cut, uint64_t bound);

/// 2^y: rank bound for y single photons after any linear-optical circuit.
uint64_t single_photon_rank_bound(size_t photons);

/// [(n_max + 1)(n_max + 2)/2]^N for N inputs of at most n_max photons.
uint64_t general_input_rank_bound(size_t n_max, size_t num_inputs);

/// |⟨a|b⟩| / (‖a‖‖b‖).
double fidelity(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);

}  // namespace percolight

#endif
