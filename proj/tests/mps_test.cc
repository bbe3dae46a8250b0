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

#include "percolight/mps.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "percolight/boson_sampling.h"
#include "percolight/errors.h"

using namespace percolight;

namespace {

size_t dense_index(const std::vector<uint32_t> &n, size_t d) {
    size_t idx = 0;
    for (uint32_t v : n) idx = idx * d + v;
    return idx;
}

Distribution born_rule(const Eigen::VectorXcd &psi, size_t num_modes, size_t d) {
    Distribution out;
    for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
        const double p = std::norm(psi(idx));
        if (p < 1e-15) continue;
        OutcomePattern n(num_modes);
        size_t rest = static_cast<size_t>(idx);
        for (size_t k = num_modes; k-- > 0;) {
            n[k] = static_cast<uint32_t>(rest % d);
            rest /= d;
        }
        out[n] = p;
    }
    return out;
}

std::vector<GeneralInputState> fock_modes(const std::vector<uint32_t> &n) {
    std::vector<GeneralInputState> out;
    for (uint32_t v : n) out.push_back(GeneralInputState::fock(v));
    return out;
}

}  // namespace

TEST(mps, product_states) {
    const std::vector<uint32_t> vac{0, 0, 0};
    const auto a = MpsState::from_fock(vac, 2).to_dense();
    ASSERT_EQ(a.size(), 8);
    ASSERT_NEAR(std::abs(a(0)), 1, 1e-15);
    ASSERT_NEAR(a.norm(), 1, 1e-15);

    const std::vector<uint32_t> ones{1, 1, 1};
    const auto b = MpsState::from_fock(ones, 2).to_dense();
    ASSERT_NEAR(std::abs(b(7)), 1, 1e-15);
    ASSERT_NEAR(b.norm(), 1, 1e-15);

    const std::vector<uint32_t> mixed{2, 0, 1};
    const auto c = MpsState::from_fock(mixed, 3);
    ASSERT_NEAR(std::abs(c.to_dense()(dense_index(mixed, 3))), 1, 1e-15);
    ASSERT_EQ(c.bond_dims(), (std::vector<size_t>{1, 1}));
}

TEST(mps, superposition_input_is_normalized) {
    GeneralInputState plus;
    plus.amplitudes = {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
    const std::vector<GeneralInputState> modes{plus, GeneralInputState::vacuum()};
    const auto s = MpsState::from_input(modes, 2);
    ASSERT_NEAR(s.norm(), 1, 1e-15);
    const auto psi = s.to_dense();
    ASSERT_NEAR(std::abs(psi(0)), 1 / std::sqrt(2.0), 1e-15);
    ASSERT_NEAR(std::abs(psi(2)), 1 / std::sqrt(2.0), 1e-15);
    ASSERT_EQ(plus.max_photon(), 1u);

    GeneralInputState loose;
    loose.amplitudes = {1.0, 1.0};
    const std::vector<GeneralInputState> bad{loose};
    ASSERT_THROW(MpsState::from_input(bad, 2), ParameterError);
}

TEST(mps, identity_gate_leaves_state_unchanged) {
    const std::vector<uint32_t> n{1, 0, 2, 1};
    auto s = MpsState::from_fock(n, 4);
    const auto before = s.to_dense();
    s.apply_beamsplitter(bs_unitary(0, 0), 0, 3);
    s.apply_beamsplitter(bs_unitary(0, 0.7), 1, 2);
    ASSERT_NEAR(fidelity(before, s.to_dense()), 1, 1e-14);
}

TEST(mps, hong_ou_mandel_state) {
    const std::vector<uint32_t> n{1, 1};
    auto s = MpsState::from_fock(n, 3);
    s.apply_beamsplitter(bs_unitary(std::numbers::pi / 4, 0), 0, 1);
    const auto psi = s.to_dense();
    ASSERT_NEAR(std::abs(psi(dense_index({1, 1}, 3))), 0, 1e-14);
    ASSERT_NEAR(std::abs(psi(dense_index({2, 0}, 3))), 1 / std::sqrt(2.0), 1e-14);
    ASSERT_NEAR(std::abs(psi(dense_index({0, 2}, 3))), 1 / std::sqrt(2.0), 1e-14);
    // Relative sign between |20> and |02> is -1.
    ASSERT_NEAR(std::abs(psi(dense_index({2, 0}, 3)) + psi(dense_index({0, 2}, 3))), 0, 1e-14);
    ASSERT_EQ(s.bond_dims(), (std::vector<size_t>{2}));
}

TEST(mps, matches_permanent_amplitudes_on_random_circuits) {
    Rng rng(31);
    for (int k = 0; k < 20; ++k) {
        const Circuit c = random_circuit(6, 3, rng, k % 2 == 0);
        const std::vector<uint32_t> n{1, 0, 1, 0, 1, 0};
        auto s = MpsState::from_fock(n, 4);
        s.apply_circuit(c);
        const auto exact = dense_output_state(build_unitary(c), fock_modes(n), 4);
        ASSERT_GE(fidelity(s.to_dense(), exact), 1 - 1e-10);
        ASSERT_NEAR(s.norm(), 1, 1e-10);
        ASSERT_LE(s.discarded_weight(), 1e-14);
    }
}

TEST(mps, fock_inputs_match_permanent_amplitudes) {
    Rng rng(32);
    const Circuit c = random_circuit(4, 3, rng);
    const std::vector<uint32_t> n{2, 0, 1, 0};
    auto s = MpsState::from_fock(n, 4);
    s.apply_circuit(c);
    const auto exact = dense_output_state(build_unitary(c), fock_modes(n), 4);
    ASSERT_GE(fidelity(s.to_dense(), exact), 1 - 1e-10);
}

TEST(mps, single_photon_schmidt_rank_bound) {
    Rng rng(33);
    for (int k = 0; k < 10; ++k) {
        const Circuit c = random_circuit(8, 4, rng);
        const std::vector<uint32_t> n{1, 0, 1, 0, 1, 0, 0, 0};
        auto s = MpsState::from_fock(n, 4);
        s.apply_circuit(c);
        const auto psi = s.to_dense();
        for (size_t cut = 1; cut < 8; ++cut) {
            const auto check = schmidt_rank_check(psi, 8, 4, cut, single_photon_rank_bound(3));
            ASSERT_TRUE(check.within_bound) << check.rank;
            ASSERT_LE(s.bond_dims()[cut - 1], 8u);
        }
        ASSERT_LE(s.max_bond_seen(), 8u);
    }
}

TEST(mps, general_input_schmidt_rank_bound) {
    Rng rng(34);
    GeneralInputState a, b;
    a.amplitudes = {0.6, 0.8};
    b.amplitudes = {Complex(0.5, 0.5), Complex(0, std::sqrt(0.5))};
    const std::vector<GeneralInputState> modes{a, GeneralInputState::vacuum(), b, GeneralInputState::vacuum(),
                                               GeneralInputState::vacuum()};
    ASSERT_EQ(general_input_rank_bound(1, 2), 9u);
    for (int k = 0; k < 10; ++k) {
        const Circuit c = random_circuit(5, 4, rng);
        auto s = MpsState::from_input(modes, 3);
        s.apply_circuit(c);
        const auto exact = dense_output_state(build_unitary(c), modes, 3);
        ASSERT_GE(fidelity(s.to_dense(), exact), 1 - 1e-10);
        for (size_t cut = 1; cut < 5; ++cut) {
            ASSERT_TRUE(schmidt_rank_check(exact, 5, 3, cut, general_input_rank_bound(1, 2)).within_bound);
        }
    }
}

TEST(mps, rank_bound_formulas) {
    ASSERT_EQ(single_photon_rank_bound(0), 1u);
    ASSERT_EQ(single_photon_rank_bound(3), 8u);
    ASSERT_EQ(general_input_rank_bound(2, 1), 6u);
    ASSERT_EQ(general_input_rank_bound(1, 3), 27u);
    ASSERT_EQ(general_input_rank_bound(5, 1000), UINT64_MAX);
}

TEST(mps, single_truncation_accounting) {
    // |11> through θ = 0.2: Schmidt values cos 0.4 and sin(0.4)/√2 (twice).
    const std::vector<uint32_t> n{1, 1};
    auto full = MpsState::from_fock(n, 3);
    full.apply_beamsplitter(bs_unitary(0.2, 0), 0, 1);
    auto cut = MpsState::from_fock(n, 3);
    cut.apply_beamsplitter(bs_unitary(0.2, 0), 0, 1, 0.5);
    ASSERT_EQ(cut.bond_dims(), (std::vector<size_t>{1}));
    const double expected = 1 - std::pow(std::cos(0.4), 2);
    ASSERT_NEAR(cut.discarded_weight(), expected, 1e-12);
    const double f = fidelity(full.to_dense(), cut.to_dense());
    ASSERT_NEAR(1 - f * f, cut.discarded_weight(), 1e-12);
    ASSERT_NEAR(cut.norm(), 1, 1e-12);
}

TEST(mps, truncation_error_is_controlled_by_discarded_weight) {
    Rng rng(35);
    int truncated = 0;
    for (int k = 0; k < 10; ++k) {
        const Circuit c = random_circuit(6, 4, rng);
        const std::vector<uint32_t> n{1, 1, 0, 1, 1, 0};
        auto exact = MpsState::from_fock(n, 5);
        exact.apply_circuit(c);
        auto cut = MpsState::from_fock(n, 5);
        cut.apply_circuit(c, 0.05);
        const double f = fidelity(exact.to_dense(), cut.to_dense());
        ASSERT_LE(1 - f * f, 2 * cut.discarded_weight() + 1e-12);
        truncated += cut.discarded_weight() > 0;
    }
    ASSERT_GT(truncated, 0);
}

TEST(mps, bond_cap_and_cutoff_errors) {
    Rng rng(36);
    const Circuit c = random_circuit(6, 4, rng);
    const std::vector<uint32_t> n{1, 0, 1, 0, 1, 0};
    auto s = MpsState::from_fock(n, 4, MpsOptions{.max_bond = 2});
    ASSERT_THROW(s.apply_circuit(c), ResourceError);

    const std::vector<uint32_t> two{2, 0};
    ASSERT_THROW(MpsState::from_fock(two, 2), ParameterError);
}

TEST(mps, sampling_product_state_is_deterministic) {
    const std::vector<uint32_t> n{0, 1, 0, 2};
    const auto s = MpsState::from_fock(n, 3);
    Rng rng(37);
    for (int k = 0; k < 100; ++k) ASSERT_EQ(s.sample(rng), OutcomePattern(n.begin(), n.end()));
}

TEST(mps, sampling_hong_ou_mandel) {
    const std::vector<uint32_t> n{1, 1};
    auto s = MpsState::from_fock(n, 3);
    s.apply_beamsplitter(bs_unitary(std::numbers::pi / 4, 0), 0, 1);
    Rng rng(38);
    size_t bunched_left = 0;
    constexpr size_t draws = 100000;
    for (size_t k = 0; k < draws; ++k) {
        const auto m = s.sample(rng);
        ASSERT_NE(m, (OutcomePattern{1, 1}));
        bunched_left += m[0] == 2;
    }
    ASSERT_NEAR(static_cast<double>(bunched_left) / draws, 0.5, 4 * 0.5 / std::sqrt(draws));
}

TEST(mps, sampling_matches_born_rule) {
    Rng rng(39);
    const Circuit c = random_circuit(5, 3, rng);
    const std::vector<uint32_t> n{1, 0, 1, 1, 0};
    auto s = MpsState::from_fock(n, 4);
    s.apply_circuit(c);
    std::vector<OutcomePattern> outs;
    for (int k = 0; k < 100000; ++k) outs.push_back(s.sample(rng));
    const auto target = born_rule(s.to_dense(), 5, 4);
    ASSERT_LE(tvd(empirical_distribution(outs), target), 0.01);
    const auto permanents = exact_component_distribution(build_unitary(c), n);
    ASSERT_LE(tvd(target, permanents), 1e-10);
}

TEST(fock_two_mode_gate, isometric_on_number_conserving_block) {
    const auto g = fock_two_mode_gate(bs_unitary(0.9, 0.3), 4);
    ASSERT_EQ(g.rows(), 16);
    std::vector<Eigen::Index> cols;
    for (size_t a = 0; a < 4; ++a) {
        for (size_t b = 0; a + b < 4; ++b) cols.push_back(static_cast<Eigen::Index>(a * 4 + b));
    }
    for (auto p : cols) {
        for (auto q : cols) {
            ASSERT_NEAR(std::abs(g.col(p).dot(g.col(q)) - (p == q ? 1.0 : 0.0)), 0, 1e-12);
        }
    }
}

TEST(mps, fidelity_and_profile) {
    Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(4);
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(4);
    e0(0) = 1;
    ASSERT_EQ(fidelity(zero, e0), 0);
    ASSERT_NEAR(fidelity(e0 * Complex(0, 3), e0), 1, 1e-15);

    const std::vector<uint32_t> n{1, 1};
    auto s = MpsState::from_fock(n, 3);
    s.apply_beamsplitter(bs_unitary(std::numbers::pi / 4, 0), 0, 1);
    ASSERT_EQ(s.profile_json(), R"({"bond_dims":[2],"discarded_weight":0.0,"max_bond":2})");
}
