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

#include "percolight/noisy_sampler.h"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <json.hpp>

#include "percolight/errors.h"
#include "percolight/percolation.h"

namespace percolight {

std::string SampleRecord::to_json() const {
    nlohmann::json doc = {
        {"outcome", outcome},
        {"lost", lost_photons},
        {"restarts", restarts},
        {"component_sizes", component_sizes},
    };
    return doc.dump();
}

NoisySampler::NoisySampler(Circuit circuit, InputSpec input, NoiseSpec noise, double epsilon, SamplerOptions options)
    : circuit_(std::move(circuit)), input_(std::move(input)), noise_(noise), epsilon_(epsilon) {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw ParameterError("epsilon must lie in (0, 1)");
    }
    if (noise_.kind == NoiseKind::both) {
        throw UnsupportedError("combined loss and distinguishability sampling is not supported");
    }
    input_.dense(circuit_.num_modes());
    unitary_ = build_unitary(circuit_);
    graph_ = lightcone_bipartite(circuit_, input_);
    for (uint32_t id : graph_.a_ids()) {
        occupations_.push_back(input_.occupations.at(id));
    }

    const uint32_t n_max = input_.max_photon();
    const size_t delta = std::max<size_t>(1, graph_.delta());
    std::optional<uint32_t> fock_n;
    if (noise_.kind == NoiseKind::loss) {
        eta_ = noise_.effective_eta(circuit_.depth());
        if (n_max > 1) fock_n = n_max;
    } else {
        if (!input_.all_single()) {
            throw UnsupportedError("partial distinguishability is modeled for single-photon inputs only");
        }
        if (!(noise_.x >= 0 && noise_.x <= 1)) {
            throw ParameterError("x must lie in [0, 1]");
        }
    }
    threshold_ = classical_threshold(delta, noise_, fock_n, circuit_.depth());
    parameter_ = threshold_.parameter;

    if (!threshold_.simulable && !options.force) {
        throw ThresholdError(
            "configuration is not classically simulable by percolation: parameter*delta^2 = " +
            std::to_string(parameter_ * static_cast<double>(delta * delta)) + " >= 1 (use force to override)");
    }
    if (options.y_star_override) {
        y_star_ = *options.y_star_override;
    } else if (threshold_.simulable) {
        y_star_ = graph_.num_a() == 0 ? 0 : percolight::y_star(graph_.num_a(), epsilon_, parameter_, delta);
    } else {
        y_star_ = std::numeric_limits<double>::infinity();
    }
    restart_limit_ = static_cast<uint64_t>(std::ceil(1000.0 / (1 - epsilon_)));
}

SampleRecord NoisySampler::sample(Rng &rng) const {
    const size_t num_a = graph_.num_a();
    SampleRecord record;
    std::vector<uint32_t> survivors(num_a);
    std::vector<uint32_t> interfering;
    std::vector<uint32_t> distinguishable;
    ComponentSet components;
    while (true) {
        interfering.clear();
        distinguishable.clear();
        if (noise_.kind == NoiseKind::loss) {
            for (size_t a = 0; a < num_a; ++a) {
                survivors[a] = sample_loss_fock(occupations_[a], eta_, rng);
                if (survivors[a] > 0) interfering.push_back(static_cast<uint32_t>(a));
            }
        } else {
            std::vector<bool> mask = sample_distinguishability(num_a, noise_.x, rng);
            for (size_t a = 0; a < num_a; ++a) {
                survivors[a] = occupations_[a];
                (mask[a] ? interfering : distinguishable).push_back(static_cast<uint32_t>(a));
            }
        }
        components = connected_components(graph_, interfering);
        if (static_cast<double>(components.max_size) <= y_star_) {
            break;
        }
        if (++record.restarts > restart_limit_) {
            throw DiagnosticError(
                "restart count exceeded " + std::to_string(restart_limit_) + "; y* = " + std::to_string(y_star_) +
                " is likely mis-set for this configuration");
        }
    }

    record.outcome.assign(circuit_.num_modes(), 0);
    uint32_t surviving = 0;
    for (const auto &comp : components.components) {
        const auto rows = static_cast<Eigen::Index>(comp.a.size());
        const auto cols = static_cast<Eigen::Index>(comp.b.size());
        ComplexMatrix sub(rows, cols);
        std::vector<uint32_t> occ;
        for (Eigen::Index r = 0; r < rows; ++r) {
            const uint32_t a = comp.a[static_cast<size_t>(r)];
            occ.push_back(survivors[a]);
            surviving += survivors[a];
            for (Eigen::Index c = 0; c < cols; ++c) {
                sub(r, c) = unitary_(graph_.a_id(a), graph_.b_id(comp.b[static_cast<size_t>(c)]));
            }
        }
        OutcomePattern counts = sample_component(sub, occ, rng);
        for (size_t c = 0; c < counts.size(); ++c) {
            record.outcome[graph_.b_id(comp.b[c])] += counts[c];
        }
        record.component_sizes.push_back(static_cast<uint32_t>(comp.size()));
    }
    for (uint32_t a : distinguishable) {
        for (uint32_t t = 0; t < survivors[a]; ++t) {
            record.outcome[sample_distinguishable(unitary_, graph_.a_id(a), rng)]++;
            record.component_sizes.push_back(1);
        }
        surviving += survivors[a];
    }
    record.lost_photons = input_.total_photons() - surviving;
    return record;
}

std::vector<SampleRecord> NoisySampler::sample_many(size_t count, uint64_t seed, size_t threads) const {
    std::vector<SampleRecord> out(count);
    auto run = [&](size_t k) {
        Rng rng = make_stream(seed, {k});
        out[k] = sample(rng);
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::max<size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (size_t k = 0; k < count; ++k) run(k);
        return out;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        for (size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (size_t k = next++; k < count && !failed; k = next++) {
                    try {
                        run(k);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

SampleRecord full_noisy_sample(
    const Circuit &circuit,
    const InputSpec &input,
    const NoiseSpec &noise,
    double epsilon,
    Rng &rng,
    const SamplerOptions &options) {
    return NoisySampler(circuit, input, noise, epsilon, options).sample(rng);
}

namespace {

// Visits every noise pattern with nonzero weight: the interfering photon
// count per A-vertex and the A-vertices carrying a distinguishable photon.
template <typename Visit>
void enumerate_noise_patterns(
    const BipartiteGraph &g, const std::vector<uint32_t> &occ, const NoiseSpec &noise, double eta, Visit &&visit) {
    const size_t num_a = g.num_a();
    std::vector<uint32_t> counts(num_a, 0);
    if (noise.kind == NoiseKind::loss) {
        // Mixed-radix walk over k_a in [0, n_a].
        while (true) {
            double weight = 1;
            for (size_t a = 0; a < num_a; ++a) {
                const uint32_t n = occ[a], k = counts[a];
                weight *= static_cast<double>(binomial_saturating(n, k)) * std::pow(eta, k) *
                          std::pow(1 - eta, static_cast<double>(n - k));
            }
            if (weight > 0) visit(weight, counts, std::vector<uint32_t>{});
            size_t pos = 0;
            while (pos < num_a && counts[pos] == occ[pos]) counts[pos++] = 0;
            if (pos == num_a) break;
            counts[pos]++;
        }
        return;
    }
    const double x = noise.x;
    for (uint64_t mask = 0; mask < (uint64_t{1} << num_a); ++mask) {
        double weight = 1;
        std::vector<uint32_t> dist;
        for (size_t a = 0; a < num_a; ++a) {
            if (mask >> a & 1) {
                counts[a] = occ[a];
                weight *= x;
            } else {
                counts[a] = 0;
                dist.push_back(static_cast<uint32_t>(a));
                weight *= 1 - x;
            }
        }
        if (weight > 0) visit(weight, counts, dist);
    }
}

ConditionedOracle run_oracle(const Circuit &circuit, const InputSpec &input, const NoiseSpec &noise, double y_star) {
    if (noise.kind == NoiseKind::both) {
        throw UnsupportedError("combined loss and distinguishability is not supported");
    }
    if (input.total_photons() > kOracleMaxPhotons || circuit.num_modes() > kOracleMaxModes) {
        throw ResourceError("brute-force oracle is capped at 5 photons and 10 modes");
    }
    if (noise.kind == NoiseKind::distinguishability && !input.all_single()) {
        throw UnsupportedError("partial distinguishability is modeled for single-photon inputs only");
    }
    const ComplexMatrix u = build_unitary(circuit);
    const BipartiteGraph g = lightcone_bipartite(circuit, input);
    std::vector<uint32_t> occ;
    for (uint32_t id : g.a_ids()) occ.push_back(input.occupations.at(id));
    const double eta = noise.kind == NoiseKind::loss ? noise.effective_eta(circuit.depth()) : 1.0;
    const size_t m = circuit.num_modes();

    ConditionedOracle out;
    enumerate_noise_patterns(
        g, occ, noise, eta,
        [&](double weight, const std::vector<uint32_t> &counts, const std::vector<uint32_t> &dist) {
            std::vector<uint32_t> dense(m, 0);
            std::vector<uint32_t> interfering;
            for (size_t a = 0; a < counts.size(); ++a) {
                dense[g.a_id(a)] = counts[a];
                if (counts[a] > 0) interfering.push_back(static_cast<uint32_t>(a));
            }
            Distribution p = exact_component_distribution(u, dense);
            if (!dist.empty()) {
                std::vector<size_t> sources;
                for (uint32_t a : dist) sources.push_back(g.a_id(a));
                p = convolve(p, distinguishable_distribution(u, sources));
            }
            const bool in_event =
                static_cast<double>(connected_components(g, interfering).max_size) <= y_star;
            if (in_event) out.p_event += weight;
            for (const auto &[outcome, prob] : p) {
                out.full[outcome] += weight * prob;
                if (in_event) out.given_event[outcome] += weight * prob;
            }
        });
    if (out.p_event > 0) {
        for (auto &[outcome, prob] : out.given_event) prob /= out.p_event;
    }
    return out;
}

}  // namespace

Distribution brute_force_oracle(const Circuit &circuit, const InputSpec &input, const NoiseSpec &noise) {
    return run_oracle(circuit, input, noise, std::numeric_limits<double>::infinity()).full;
}

ConditionedOracle conditioned_oracle(
    const Circuit &circuit, const InputSpec &input, const NoiseSpec &noise, double y_star) {
    return run_oracle(circuit, input, noise, y_star);
}

}  // namespace percolight
