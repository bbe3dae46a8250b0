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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "percolight/errors.h"
#include "percolight/percolation.h"

using namespace percolight;

namespace {

NoiseSpec loss(double eta) {
    NoiseSpec n;
    n.kind = NoiseKind::loss;
    n.eta = eta;
    return n;
}

NoiseSpec overlap(double x) {
    NoiseSpec n;
    n.kind = NoiseKind::distinguishability;
    n.x = x;
    return n;
}

SamplerOptions forced(std::optional<double> y = std::nullopt) {
    SamplerOptions o;
    o.force = true;
    o.y_star_override = y;
    return o;
}

Circuit balanced_splitter() {
    Circuit c(2);
    c.add_layer({{0, 0, 1, std::numbers::pi / 4, 0}});
    return c;
}

Distribution sampled(const NoisySampler &s, size_t n, uint64_t seed) {
    std::vector<OutcomePattern> out;
    for (const auto &r : s.sample_many(n, seed)) out.push_back(r.outcome);
    return empirical_distribution(out);
}

}  // namespace

TEST(noisy_sampler, total_loss_gives_vacuum) {
    Rng rng(1);
    const Circuit c = random_circuit(6, 2, rng);
    const auto input = InputSpec::single_photons({0, 2, 4});
    const NoisySampler s(c, input, loss(0.0), 0.01);
    ASSERT_EQ(s.y_star(), 0.0);
    for (int k = 0; k < 100; ++k) {
        const auto r = s.sample(rng);
        ASSERT_EQ(r.outcome, OutcomePattern(6, 0));
        ASSERT_EQ(r.lost_photons, 3u);
        ASSERT_EQ(r.restarts, 0u);
        ASSERT_TRUE(r.component_sizes.empty());
    }
}

TEST(noisy_sampler, noiseless_single_component_is_exact_boson_sampling) {
    Rng rng(2);
    const Circuit c = random_circuit(5, 3, rng);
    const auto input = InputSpec::single_photons({0, 1, 3});
    const NoisySampler s(c, input, loss(1.0), 0.01, forced());
    ASSERT_TRUE(std::isinf(s.y_star()));
    const auto records = s.sample_many(100000, 3);
    std::vector<OutcomePattern> outs;
    for (const auto &r : records) {
        ASSERT_EQ(r.restarts, 0u);
        ASSERT_EQ(r.lost_photons, 0u);
        outs.push_back(r.outcome);
    }
    const auto exact = exact_component_distribution(s.unitary(), input.dense(5));
    ASSERT_LE(tvd(empirical_distribution(outs), exact), 0.01);
    ASSERT_LE(tvd(brute_force_oracle(c, input, loss(1.0)), exact), 1e-12);
}

TEST(noisy_sampler, photon_bookkeeping) {
    Rng rng(4);
    const Circuit c = random_circuit(8, 2, rng);
    const auto input = InputSpec::single_photons({0, 1, 2, 5, 7});
    const NoisySampler s(c, input, loss(0.6), 0.01, forced(3));
    for (const auto &r : s.sample_many(2000, 5)) {
        uint32_t detected = 0;
        for (uint32_t v : r.outcome) detected += v;
        ASSERT_EQ(detected + r.lost_photons, 5u);
        uint32_t sized = 0;
        for (uint32_t v : r.component_sizes) {
            ASSERT_LE(v, 3u);
            sized += v;
        }
        ASSERT_EQ(sized, detected);
    }
}

TEST(noisy_sampler, loss_matches_oracle) {
    Rng rng(5);
    const Circuit c = random_circuit(6, 2, rng);
    const auto input = InputSpec::single_photons({1, 2, 4});
    const NoisySampler s(c, input, loss(0.5), 0.01, forced(4));
    ASSERT_LE(tvd(sampled(s, 100000, 6), brute_force_oracle(c, input, loss(0.5))), 0.015);
}

TEST(noisy_sampler, fock_input_loss_matches_oracle) {
    Rng rng(6);
    const Circuit c = random_circuit(5, 2, rng);
    InputSpec input;
    input.occupations = {{0, 2}, {3, 1}};
    const NoisySampler s(c, input, loss(0.6), 0.01, forced(4));
    ASSERT_NEAR(s.percolation_parameter(), 1 - 0.4 * 0.4, 1e-15);
    const auto oracle = brute_force_oracle(c, input, loss(0.6));
    ASSERT_NEAR(total_probability(oracle), 1, 1e-12);
    ASSERT_LE(tvd(sampled(s, 100000, 7), oracle), 0.01);
}

TEST(noisy_sampler, distinguishability_matches_oracle) {
    Rng rng(7);
    const Circuit c = random_circuit(6, 2, rng);
    const auto input = InputSpec::single_photons({0, 3, 5});
    const NoisySampler s(c, input, overlap(0.5), 0.01, forced(4));
    ASSERT_LE(tvd(sampled(s, 100000, 8), brute_force_oracle(c, input, overlap(0.5))), 0.015);
}

TEST(noisy_sampler, fully_distinguishable_is_product_of_marginals) {
    Rng rng(8);
    const Circuit c = random_circuit(5, 3, rng);
    const auto input = InputSpec::single_photons({0, 2, 4});
    const NoisySampler s(c, input, overlap(0.0), 0.01);
    const std::vector<size_t> sources{0, 2, 4};
    const auto classical = distinguishable_distribution(s.unitary(), sources);
    ASSERT_LE(tvd(brute_force_oracle(c, input, overlap(0.0)), classical), 1e-12);
    ASSERT_LE(tvd(sampled(s, 100000, 9), classical), 0.01);
}

TEST(brute_force_oracle, hong_ou_mandel_with_and_without_interference) {
    const auto input = InputSpec::single_photons({0, 1});
    const auto classical = brute_force_oracle(balanced_splitter(), input, overlap(0.0));
    ASSERT_NEAR(classical.at({1, 1}), 0.5, 1e-12);
    const auto quantum = brute_force_oracle(balanced_splitter(), input, overlap(1.0));
    ASSERT_LE(quantum.count({1, 1}) ? quantum.at({1, 1}) : 0.0, 1e-12);
    const auto half = brute_force_oracle(balanced_splitter(), input, overlap(0.5));
    ASSERT_NEAR(half.at({1, 1}), 0.75 * 0.5, 1e-12);
}

TEST(brute_force_oracle, limits) {
    const Circuit c(12);
    ASSERT_THROW(brute_force_oracle(c, InputSpec::single_photons({0}), loss(0.5)), ResourceError);
    const Circuit d(8);
    ASSERT_THROW(brute_force_oracle(d, InputSpec::single_photons({0, 1, 2, 3, 4, 5}), loss(0.5)), ResourceError);
    InputSpec fock;
    fock.occupations = {{0, 2}};
    ASSERT_THROW(brute_force_oracle(d, fock, overlap(0.5)), UnsupportedError);
}

TEST(noisy_sampler, restarts_sample_the_conditioned_distribution) {
    Rng rng(10);
    const Circuit c = random_circuit(6, 3, rng);
    const auto input = InputSpec::single_photons({0, 1, 3, 4});
    const auto oracle = conditioned_oracle(c, input, loss(0.6), 2.0);
    ASSERT_GT(1 - oracle.p_event, 0.05);
    const NoisySampler s(c, input, loss(0.6), 0.01, forced(2));
    const auto records = s.sample_many(100000, 11);
    std::vector<OutcomePattern> outs;
    double restarts = 0;
    for (const auto &r : records) {
        outs.push_back(r.outcome);
        restarts += static_cast<double>(r.restarts);
    }
    ASSERT_LE(tvd(empirical_distribution(outs), oracle.given_event), 0.01);
    // Restarts per draw estimate p(E^c).
    const double draws = restarts + 100000;
    const double rate = restarts / draws;
    const double p_fail = 1 - oracle.p_event;
    ASSERT_NEAR(rate, p_fail, 4 * std::sqrt(p_fail * (1 - p_fail) / draws));
}

TEST(conditioned_oracle, tvd_budget_property) {
    Rng rng(12);
    int nontrivial = 0;
    for (int k = 0; k < 10; ++k) {
        const Circuit c = random_circuit(8, 2 + k % 2, rng);
        const auto input = InputSpec::single_photons({0, 2, 5, 7});
        for (double eta : {0.3, 0.7}) {
            const auto o = conditioned_oracle(c, input, loss(eta), 2.0);
            const double p_fail = 1 - o.p_event;
            const double d = tvd(o.full, o.given_event);
            ASSERT_NEAR(total_probability(o.full), 1, 1e-12);
            ASSERT_NEAR(total_probability(o.given_event), 1, 1e-12);
            ASSERT_LE(d, 2 * p_fail + 1e-12);
            ASSERT_LE(d, p_fail + 1e-12);
            nontrivial += p_fail > 0;
        }
    }
    ASSERT_GT(nontrivial, 5);
}

TEST(conditioned_oracle, matches_full_oracle_when_cap_is_large) {
    Rng rng(13);
    const Circuit c = random_circuit(6, 2, rng);
    const auto input = InputSpec::single_photons({0, 1, 2});
    const auto o = conditioned_oracle(c, input, loss(0.4), 10.0);
    ASSERT_NEAR(o.p_event, 1, 1e-12);
    ASSERT_LE(tvd(o.full, o.given_event), 1e-12);
    ASSERT_LE(tvd(o.full, brute_force_oracle(c, input, loss(0.4))), 1e-12);
}

TEST(noisy_sampler, tail_bound_cap_keeps_restart_rate_within_budget) {
    // Depth-1 local circuit: Δ = 2, so η = 0.2 gives ηΔ² = 0.8 < 1.
    Rng rng(14);
    const Circuit c = random_circuit(40, 1, rng, true);
    std::vector<size_t> modes;
    for (size_t v = 0; v < 40; v += 2) modes.push_back(v);
    const auto input = InputSpec::single_photons(modes);
    const double eps = 0.01;
    const NoisySampler s(c, input, loss(0.2), eps);
    ASSERT_TRUE(s.threshold().simulable);
    ASSERT_NEAR(s.y_star(), y_star(input.total_photons(), eps, 0.2, s.graph().delta()), 1e-12);
    double restarts = 0;
    constexpr size_t n = 20000;
    for (const auto &r : s.sample_many(n, 15)) restarts += static_cast<double>(r.restarts);
    const double rate = restarts / (restarts + n);
    ASSERT_LE(rate, eps + 3 * std::sqrt(eps * (1 - eps) / n));
}

TEST(noisy_sampler, refuses_supercritical_without_force) {
    Rng rng(16);
    const Circuit c = random_circuit(6, 3, rng);
    const auto input = InputSpec::single_photons({0, 1, 2});
    ASSERT_THROW(NoisySampler(c, input, loss(0.9), 0.01), ThresholdError);
    ASSERT_NO_THROW(NoisySampler(c, input, loss(0.9), 0.01, forced()));
}

TEST(noisy_sampler, parameter_errors) {
    Rng rng(17);
    const Circuit c = random_circuit(6, 2, rng);
    const auto input = InputSpec::single_photons({0, 1});
    NoiseSpec both;
    both.kind = NoiseKind::both;
    ASSERT_THROW(NoisySampler(c, input, both, 0.01, forced()), UnsupportedError);
    ASSERT_THROW(NoisySampler(c, input, loss(0.1), 0.0), ParameterError);
    ASSERT_THROW(NoisySampler(c, input, loss(0.1), 1.0), ParameterError);
    ASSERT_THROW(NoisySampler(c, InputSpec::single_photons({6}), loss(0.1), 0.1), ParameterError);
    InputSpec fock;
    fock.occupations = {{0, 2}};
    ASSERT_THROW(NoisySampler(c, fock, overlap(0.1), 0.1, forced()), UnsupportedError);
}

TEST(noisy_sampler, runaway_restarts_are_diagnosed) {
    Rng rng(18);
    const Circuit c = random_circuit(4, 2, rng);
    const NoisySampler s(c, InputSpec::single_photons({0, 1}), loss(1.0), 0.01, forced(0.5));
    ASSERT_THROW(s.sample(rng), DiagnosticError);
    ASSERT_THROW(s.sample_many(10, 1, 2), DiagnosticError);
}

TEST(noisy_sampler, per_layer_transmission_folds_over_depth) {
    Rng rng(19);
    const Circuit c = random_circuit(6, 2, rng);
    NoiseSpec n;
    n.eta_per_layer = 0.5;
    const NoisySampler s(c, InputSpec::single_photons({0, 3}), n, 0.01, forced());
    ASSERT_DOUBLE_EQ(s.effective_eta(), 0.25);
}

TEST(noisy_sampler, output_independent_of_threads) {
    Rng rng(20);
    const Circuit c = random_circuit(8, 3, rng);
    const NoisySampler s(c, InputSpec::single_photons({0, 2, 4, 6}), loss(0.5), 0.01, forced(3));
    const auto a = s.sample_many(3000, 21, 1);
    const auto b = s.sample_many(3000, 21, 4);
    ASSERT_EQ(a.size(), b.size());
    for (size_t k = 0; k < a.size(); ++k) ASSERT_EQ(a[k].to_json(), b[k].to_json());
}

TEST(full_noisy_sample, matches_sampler_stream) {
    Rng rng(22);
    const Circuit c = random_circuit(6, 2, rng);
    const auto input = InputSpec::single_photons({1, 4});
    Rng a(23), b(23);
    const NoisySampler s(c, input, loss(0.7), 0.01, forced());
    for (int k = 0; k < 50; ++k) {
        ASSERT_EQ(full_noisy_sample(c, input, loss(0.7), 0.01, a, forced()).to_json(), s.sample(b).to_json());
    }
}

TEST(sample_record, json_shape) {
    SampleRecord r;
    r.outcome = {0, 2, 1};
    r.lost_photons = 1;
    r.restarts = 4;
    r.component_sizes = {2, 1};
    ASSERT_EQ(r.to_json(), R"({"component_sizes":[2,1],"lost":1,"outcome":[0,2,1],"restarts":4})");
}
