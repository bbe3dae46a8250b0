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

#ifndef PERCOLIGHT_NOISY_SAMPLER_H
#define PERCOLIGHT_NOISY_SAMPLER_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "percolight/bipartite_graph.h"
#include "percolight/boson_sampling.h"
#include "percolight/circuit.h"
#include "percolight/noise.h"
#include "percolight/rng.h"

namespace percolight {

struct SampleRecord {
    OutcomePattern outcome;
    uint32_t lost_photons = 0;
    uint64_t restarts = 0;
    /// |A| of every simulated component; distinguishable photons appear as
    /// singletons.
    std::vector<uint32_t> component_sizes;

    /// {"outcome":[...],"lost":k,"restarts":r,"component_sizes":[...]}
    std::string to_json() const;
};

struct SamplerOptions {
    /// Replaces the tail-bound cap y*(N, ε, parameter, Δ).
    std::optional<double> y_star_override;
    /// Run even when the threshold condition fails. Without a y* override the
    /// cap is then infinite (no restarts).
    bool force = false;
};

/// Percolation-decomposition sampler for noisy linear-optical circuits.
///
/// Per sample: draw the noise pattern (loss survivors or indistinguishable
/// set), percolate the lightcone graph, restart from the noise draw while any
/// component exceeds y*, then simulate each component exactly on its
/// sub-isometry and add counts per physical output mode. The emitted
/// distribution is p(m | E) with E = {max_i |G_i| <= y*}, whose total
/// variation distance to p(m) is at most Pr(E^⊥) <= ε.
class NoisySampler {
   public:
    NoisySampler(Circuit circuit, InputSpec input, NoiseSpec noise, double epsilon, SamplerOptions options = {});

    SampleRecord sample(Rng &rng) const;

    /// Samples `count` records, record k drawn from stream (seed, k); output
    /// is independent of `threads`.
    std::vector<SampleRecord> sample_many(size_t count, uint64_t seed, size_t threads = 1) const;

    const BipartiteGraph &graph() const { return graph_; }
    const ComplexMatrix &unitary() const { return unitary_; }
    double y_star() const { return y_star_; }
    double effective_eta() const { return eta_; }
    /// The percolation parameter: η, 1 - (1 - η)^n_max, or x.
    double percolation_parameter() const { return parameter_; }
    const ThresholdReport &threshold() const { return threshold_; }
    /// Restart count above which sampling aborts with DiagnosticError.
    uint64_t restart_limit() const { return restart_limit_; }

   private:
    Circuit circuit_;
    InputSpec input_;
    NoiseSpec noise_;
    double epsilon_;
    ComplexMatrix unitary_;
    BipartiteGraph graph_;
    std::vector<uint32_t> occupations_;  // per A-index
    double eta_ = 1;
    double parameter_ = 1;
    ThresholdReport threshold_{};
    double y_star_ = 0;
    uint64_t restart_limit_ = 0;
};

SampleRecord full_noisy_sample(
    const Circuit &circuit,
    const InputSpec &input,
    const NoiseSpec &noise,
    double epsilon,
    Rng &rng,
    const SamplerOptions &options = {});

inline constexpr size_t kOracleMaxPhotons = 5;
inline constexpr size_t kOracleMaxModes = 10;

/// Exact noisy output distribution p(m): enumerates every noise pattern with
/// its weight and mixes the exact per-pattern distributions computed on the
/// full unitary (interfering photons via permanents, distinguishable photons
/// by convolution of |U(v, w)|² rows). Throws ResourceError above 5 photons or
/// 10 modes.
Distribution brute_force_oracle(const Circuit &circuit, const InputSpec &input, const NoiseSpec &noise);

/// Exact decomposition p = p(·|E)p(E) + p(·|E^⊥)p(E^⊥) with
/// E = {max component size <= y_star}.
struct ConditionedOracle {
    Distribution full;
    Distribution given_event;
    double p_event = 0;
};
ConditionedOracle conditioned_oracle(
    const Circuit &circuit, const InputSpec &input, const NoiseSpec &noise, double y_star);

}  // namespace percolight

#endif
