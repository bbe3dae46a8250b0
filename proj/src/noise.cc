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

#include "percolight/noise.h"

#include <cmath>

#include <json.hpp>

#include "percolight/errors.h"

namespace percolight {

namespace {

void check_probability(double p, const char *name) {
    if (!(p >= 0 && p <= 1)) {
        throw ParameterError(std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

std::string to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::loss:
            return "loss";
        case NoiseKind::distinguishability:
            return "distinguishability";
        case NoiseKind::both:
            return "both";
    }
    return "loss";
}

NoiseKind parse_noise_kind(const std::string &name) {
    if (name == "loss") return NoiseKind::loss;
    if (name == "distinguishability") return NoiseKind::distinguishability;
    if (name == "both") return NoiseKind::both;
    throw ParameterError("unknown noise kind '" + name + "'");
}

double NoiseSpec::effective_eta(size_t depth) const {
    if (eta_per_layer) {
        return fold_per_layer_loss(*eta_per_layer, depth);
    }
    check_probability(eta, "eta");
    return eta;
}

NoiseSpec NoiseSpec::from_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ParameterError(std::string("noise spec is not valid JSON: ") + e.what());
    }
    NoiseSpec spec;
    spec.eta = doc.value("eta", 1.0);
    spec.x = doc.value("x", 1.0);
    if (doc.contains("eta_per_layer") && !doc["eta_per_layer"].is_null()) {
        spec.eta_per_layer = doc["eta_per_layer"].get<double>();
    }
    spec.kind = parse_noise_kind(doc.value("kind", std::string("loss")));
    return spec;
}

std::string NoiseSpec::to_json() const {
    nlohmann::json doc = {{"kind", to_string(kind)}, {"eta", eta}, {"x", x}};
    doc["eta_per_layer"] = eta_per_layer ? nlohmann::json(*eta_per_layer) : nlohmann::json(nullptr);
    return doc.dump();
}

std::vector<bool> sample_loss_single(const InputSpec &input, double eta, Rng &rng) {
    check_probability(eta, "eta");
    if (!input.all_single()) {
        throw ParameterError("sample_loss_single needs single-photon occupations");
    }
    std::vector<bool> survived;
    survived.reserve(input.occupations.size());
    for (size_t k = 0; k < input.occupations.size(); ++k) {
        survived.push_back(bernoulli(rng, eta));
    }
    return survived;
}

uint32_t sample_loss_fock(uint32_t n, double eta, Rng &rng) {
    check_probability(eta, "eta");
    uint32_t k = 0;
    for (uint32_t t = 0; t < n; ++t) {
        k += bernoulli(rng, eta) ? 1 : 0;
    }
    return k;
}

double fold_per_layer_loss(double eta1, size_t depth) {
    check_probability(eta1, "eta_per_layer");
    double out = 1;
    double base = eta1;
    // Exact binary powering keeps fold(a + b) = fold(a)·fold(b) to rounding.
    for (size_t d = depth; d > 0; d >>= 1) {
        if (d & 1) out *= base;
        base *= base;
    }
    return out;
}

std::vector<bool> sample_distinguishability(size_t n_photons, double x, Rng &rng) {
    check_probability(x, "x");
    std::vector<bool> indistinguishable;
    indistinguishable.reserve(n_photons);
    for (size_t k = 0; k < n_photons; ++k) {
        indistinguishable.push_back(bernoulli(rng, x));
    }
    return indistinguishable;
}

double fock_survival_probability(uint32_t n, double eta) {
    check_probability(eta, "eta");
    // 1 - (1-η)^n = η Σ_{k<n} (1-η)^k, exact for n = 1.
    double sum = 0;
    double term = 1;
    for (uint32_t k = 0; k < n; ++k) {
        sum += term;
        term *= 1 - eta;
    }
    return eta * sum;
}

ThresholdReport classical_threshold(
    size_t delta, const NoiseSpec &noise, std::optional<uint32_t> fock_n, std::optional<size_t> depth) {
    if (delta < 1) {
        throw ParameterError("delta must be >= 1");
    }
    double parameter = 0;
    switch (noise.kind) {
        case NoiseKind::both:
            throw UnsupportedError("combined loss and distinguishability has no threshold; run them separately");
        case NoiseKind::distinguishability:
            check_probability(noise.x, "x");
            parameter = noise.x;
            break;
        case NoiseKind::loss: {
            if (noise.eta_per_layer && !depth) {
                throw ParameterError("per-layer transmission needs the circuit depth");
            }
            const double eta = noise.effective_eta(depth.value_or(0));
            parameter = fock_n ? fock_survival_probability(*fock_n, eta) : eta;
            break;
        }
    }
    const double d2 = static_cast<double>(delta) * static_cast<double>(delta);
    ThresholdReport report;
    report.parameter = parameter;
    report.margin = 1 - parameter * d2;
    report.simulable = report.margin > 0;
    return report;
}

}  // namespace percolight
