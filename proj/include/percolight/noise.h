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

#ifndef PERCOLIGHT_NOISE_H
#define PERCOLIGHT_NOISE_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "percolight/circuit.h"
#include "percolight/rng.h"

namespace percolight {

enum class NoiseKind { loss, distinguishability, both };

std::string to_string(NoiseKind kind);
NoiseKind parse_noise_kind(const std::string &name);

/// Loss and partial-distinguishability parameters.
///
/// Uniform loss commutes with beam splitters, so all loss is applied at the
/// input. With `eta_per_layer` set, the total transmission is η₁^depth and
/// `eta` is ignored.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::loss;
    double eta = 1.0;
    std::optional<double> eta_per_layer;
    double x = 1.0;

    /// Total transmission for a circuit of the given depth.
    double effective_eta(size_t depth) const;

    /// Keys "eta", "eta_per_layer", "x", "kind".
    static NoiseSpec from_json(const std::string &text);
    std::string to_json() const;
};

/// One Bernoulli(η) survival draw per photon, in ascending mode order.
/// Requires every occupation to be 1.
std::vector<bool> sample_loss_single(const InputSpec &input, double eta, Rng &rng);

/// Surviving photon count of an n-photon Fock state: k ~ Binomial(n, η),
/// drawn as n Bernoulli trials (n = 1 consumes the stream exactly like
/// sample_loss_single).
uint32_t sample_loss_fock(uint32_t n, double eta, Rng &rng);

/// η₁^depth, with depth 0 giving 1.
double fold_per_layer_loss(double eta1, size_t depth);

/// Each photon independently indistinguishable with probability x.
std::vector<bool> sample_distinguishability(size_t n_photons, double x, Rng &rng);

struct ThresholdReport {
    /// η, x or 1 - (1 - η)^n depending on the noise model.
    double parameter;
    /// 1 - parameter·Δ², unclamped.
    double margin;
    bool simulable;
};

/// Percolation-based classical simulability condition:
///   loss, single photons:     ηΔ² < 1
///   loss, Fock inputs (n):    [1 - (1 - η)^n]Δ² < 1
///   distinguishability:       xΔ² < 1
/// `depth` is required when the spec carries a per-layer transmission.
/// kind == both throws UnsupportedError.
ThresholdReport classical_threshold(
    size_t delta,
    const NoiseSpec &noise,
    std::optional<uint32_t> fock_n = std::nullopt,
    std::optional<size_t> depth = std::nullopt);

/// Probability that an n-photon Fock input keeps at least one photon.
double fock_survival_probability(uint32_t n, double eta);

}  // namespace percolight

#endif
