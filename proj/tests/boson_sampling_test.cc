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

#include "percolight/boson_sampling.h"

#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "percolight/errors.h"

using namespace percolight;

namespace {

double factorial(uint32_t n) {
    double out = 1;
    for (uint32_t k = 2; k <= n; ++k) out *= k;
    return out;
}

// Fock-space oracle independent of permanents: expands
// Π_i (Σ_w U(i, w) a_w^†)^{s_i} / sqrt(s_i!) as a polynomial in creation
// operators and reads amplitudes off the monomials.
Distribution polynomial_oracle(const ComplexMatrix &u, const std::vector<uint32_t> &inputs) {
    const auto cols = static_cast<size_t>(u.cols());
    std::map<OutcomePattern, Complex> poly{{OutcomePattern(cols, 0), Complex(1)}};
    double norm = 1;
    for (size_t i = 0; i < inputs.size(); ++i) {
        norm *= factorial(inputs[i]);
        for (uint32_t t = 0; t < inputs[i]; ++t) {
            std::map<OutcomePattern, Complex> next;
            for (const auto &[mono, coef] : poly) {
                for (size_t w = 0; w < cols; ++w) {
                    const Complex c = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(w));
                    if (c == Complex(0)) continue;
                    OutcomePattern m = mono;
                    m[w]++;
                    next[m] += coef * c;
                }
            }
            poly = std::move(next);
        }
    }
    Distribution out;
    for (const auto &[mono, coef] : poly) {
        double mnorm = 1;
        for (uint32_t v : mono) mnorm *= factorial(v);
        const double p = std::norm(coef) * mnorm / norm;
        if (p > 0) out[mono] = p;
    }
    return out;
}

ComplexMatrix haar_like(size_t modes, Rng &rng) {
    return build_unitary(random_circuit(modes, 2 * modes, rng));
}

}  // namespace

TEST(patterns, enumeration_matches_count) {
    for (uint32_t total = 0; total <= 4; ++total) {
        for (size_t modes = 1; modes <= 5; ++modes) {
            std::set<OutcomePattern> seen;
            for_each_pattern(total, modes, [&](const OutcomePattern &p) {
                uint32_t sum = 0;
                for (uint32_t v : p) sum += v;
                ASSERT_EQ(sum, total);
                seen.insert(p);
            });
            ASSERT_EQ(seen.size(), count_patterns(total, modes));
        }
    }
    ASSERT_EQ(count_patterns(3, 6), 56u);
}

TEST(binomial_saturating, values_and_overflow) {
    ASSERT_EQ(binomial_saturating(8, 3), 56u);
    ASSERT_EQ(binomial_saturating(1, 1), 1u);
    ASSERT_EQ(binomial_saturating(3, 5), 0u);
    ASSERT_EQ(binomial_saturating(62, 31), 465428353255261088u);
    bool saturated = false;
    ASSERT_EQ(binomial_saturating(200, 100, &saturated), UINT64_MAX);
    ASSERT_TRUE(saturated);
}

TEST(repeated_submatrix, repeats_rows_and_columns) {
    ComplexMatrix u(2, 3);
    u << 1, 2, 3, 4, 5, 6;
    const std::vector<uint32_t> s{2, 0};
    const std::vector<uint32_t> m{0, 1, 1};
    const auto sub = repeated_submatrix(u, s, m);
    ComplexMatrix expected(2, 2);
    expected << 2, 3, 2, 3;
    ASSERT_EQ(sub, expected);
}

TEST(outcome_probability, identity_circuit) {
    const ComplexMatrix u = ComplexMatrix::Identity(4, 4);
    const std::vector<uint32_t> s{1, 0, 2, 1};
    ASSERT_NEAR(outcome_probability(u, s, s), 1.0, 1e-15);
    ASSERT_EQ(outcome_probability(u, s, std::vector<uint32_t>{0, 1, 2, 1}), 0.0);
}

TEST(outcome_probability, hong_ou_mandel) {
    const ComplexMatrix u = bs_unitary(std::numbers::pi / 4, 0);
    const std::vector<uint32_t> s{1, 1};
    ASSERT_LE(outcome_probability(u, s, std::vector<uint32_t>{1, 1}), 1e-12);
    double total = 0;
    for_each_pattern(2, 2, [&](const OutcomePattern &m) { total += outcome_probability(u, s, m); });
    ASSERT_NEAR(total, 1, 1e-12);
    ASSERT_NEAR(outcome_probability(u, s, std::vector<uint32_t>{2, 0}), 0.5, 1e-12);
    ASSERT_NEAR(outcome_probability(u, s, std::vector<uint32_t>{0, 2}), 0.5, 1e-12);
}

TEST(outcome_probability, errors) {
    const ComplexMatrix u = ComplexMatrix::Identity(2, 2);
    ASSERT_THROW(outcome_probability(u, std::vector<uint32_t>{1, 1}, std::vector<uint32_t>{1, 0}), DomainError);
    ASSERT_THROW(outcome_probability(u, std::vector<uint32_t>{1}, std::vector<uint32_t>{1, 0}), StructuralError);
}

TEST(exact_component_distribution, matches_polynomial_oracle) {
    Rng rng(3);
    const std::vector<std::vector<uint32_t>> inputs{
        {1, 1, 1, 0, 0, 0}, {2, 1, 0, 0, 0, 0}, {0, 3, 0, 0, 0, 0}, {1, 0, 1, 0, 1, 1}};
    for (const auto &s : inputs) {
        const auto u = haar_like(6, rng);
        const auto got = exact_component_distribution(u, s);
        ASSERT_NEAR(total_probability(got), 1, 1e-9);
        ASSERT_LE(tvd(got, polynomial_oracle(u, s)), 1e-12);
    }
}

TEST(exact_component_distribution, rectangular_block) {
    // Rows of an isometry: two inputs spread over three outputs.
    Rng rng(4);
    const ComplexMatrix u = haar_like(5, rng).topLeftCorner(2, 5);
    const std::vector<uint32_t> s{1, 1};
    const auto got = exact_component_distribution(u, s);
    ASSERT_NEAR(total_probability(got), 1, 1e-12);
    ASSERT_LE(tvd(got, polynomial_oracle(u, s)), 1e-12);
}

TEST(exact_component_distribution, single_photon_single_output) {
    ComplexMatrix u(1, 1);
    u << 1;
    const auto d = exact_component_distribution(u, std::vector<uint32_t>{1});
    ASSERT_EQ(d.size(), 1u);
    ASSERT_NEAR(d.begin()->second, 1, 1e-15);
}

TEST(exact_component_distribution, outcome_count_within_binomial_bound) {
    // A three-photon component with Δ = 2 reaches at most 6 outputs.
    Rng rng(5);
    const auto u = haar_like(6, rng);
    const auto d = exact_component_distribution(u, std::vector<uint32_t>{1, 1, 1, 0, 0, 0});
    ASSERT_LE(d.size(), 56u);
    ASSERT_EQ(hilbert_dim_bound(3, 2).exact, 56u);
}

TEST(exact_component_distribution, cap) {
    const ComplexMatrix u = ComplexMatrix::Identity(10, 10);
    std::vector<uint32_t> s(10, 1);
    ASSERT_THROW(exact_component_distribution(u, s, 1000), ResourceError);
}

TEST(sample_component, identity_returns_input) {
    Rng rng(6);
    const ComplexMatrix u = ComplexMatrix::Identity(5, 5);
    const std::vector<uint32_t> s{0, 2, 1, 0, 1};
    for (int k = 0; k < 100; ++k) {
        ASSERT_EQ(sample_component(u, s, rng), OutcomePattern(s.begin(), s.end()));
    }
}

TEST(sample_component, hong_ou_mandel) {
    Rng rng(7);
    const ComplexMatrix u = bs_unitary(std::numbers::pi / 4, 0);
    const std::vector<uint32_t> s{1, 1};
    int coincidences = 0;
    constexpr int n = 100000;
    for (int k = 0; k < n; ++k) {
        const auto m = sample_component(u, s, rng);
        coincidences += m[0] == 1;
    }
    ASSERT_LE(coincidences / double(n), 0.001);
}

TEST(sample_component, matches_exact_distribution) {
    Rng rng(8);
    for (const auto &s : {std::vector<uint32_t>{1, 0, 1, 0, 1, 0}, std::vector<uint32_t>{2, 0, 0, 1, 0, 0}}) {
        const auto u = haar_like(6, rng);
        std::vector<OutcomePattern> samples;
        for (int k = 0; k < 100000; ++k) samples.push_back(sample_component(u, s, rng));
        ASSERT_LE(tvd(empirical_distribution(samples), exact_component_distribution(u, s)), 0.01);
    }
}

TEST(sample_distinguishable, identity_and_balanced_splitter) {
    Rng rng(9);
    const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
    for (int k = 0; k < 50; ++k) ASSERT_EQ(sample_distinguishable(id, 2, rng), 2u);
    const ComplexMatrix u = bs_unitary(std::numbers::pi / 4, 0);
    int zeros = 0;
    constexpr int n = 100000;
    for (int k = 0; k < n; ++k) zeros += sample_distinguishable(u, 0, rng) == 0;
    ASSERT_NEAR(zeros / double(n), 0.5, 0.01);
    ASSERT_THROW(sample_distinguishable(u, 2, rng), ParameterError);
}

TEST(sample_distinguishable, rows_are_normalized) {
    Rng rng(10);
    const auto u = haar_like(8, rng);
    for (Eigen::Index v = 0; v < 8; ++v) {
        ASSERT_NEAR(u.row(v).squaredNorm(), 1, 1e-12);
    }
}

TEST(distinguishable_distribution, classical_particles_show_no_dip) {
    const ComplexMatrix u = bs_unitary(std::numbers::pi / 4, 0);
    const std::vector<size_t> sources{0, 1};
    const auto d = distinguishable_distribution(u, sources);
    ASSERT_NEAR(d.at({1, 1}), 0.5, 1e-12);
    ASSERT_NEAR(d.at({2, 0}), 0.25, 1e-12);
    ASSERT_NEAR(total_probability(d), 1, 1e-12);
}

TEST(distributions, convolve_empirical_and_tvd) {
    Distribution p{{{1, 0}, 0.5}, {{0, 1}, 0.5}};
    Distribution q{{{1, 0}, 1.0}};
    const auto c = convolve(p, q);
    ASSERT_NEAR(c.at({2, 0}), 0.5, 1e-15);
    ASSERT_NEAR(c.at({1, 1}), 0.5, 1e-15);
    ASSERT_THROW(convolve(p, Distribution{{{1}, 1.0}}), StructuralError);

    ASSERT_EQ(tvd(p, p), 0.0);
    ASSERT_NEAR(tvd(Distribution{{{1, 0}, 1.0}}, Distribution{{{0, 1}, 1.0}}), 1.0, 1e-15);
    ASSERT_NEAR(tvd(p, q), 0.5, 1e-15);

    const auto e = empirical_distribution({{1, 0}, {1, 0}, {0, 1}, {1, 0}});
    ASSERT_NEAR(e.at({1, 0}), 0.75, 1e-15);
    ASSERT_NEAR(total_probability(e), 1, 1e-15);
}

TEST(hilbert_dim_bound, values_and_relaxation) {
    ASSERT_EQ(hilbert_dim_bound(3, 2).exact, 56u);
    ASSERT_EQ(hilbert_dim_bound(1, 1).exact, 1u);
    ASSERT_EQ(hilbert_dim_bound(2, 3, 2).exact, binomial_saturating(9, 4));
    for (uint64_t y = 1; y <= 10; ++y) {
        for (uint64_t delta = 1; delta <= 9; ++delta) {
            const auto b = hilbert_dim_bound(y, delta);
            ASSERT_FALSE(b.saturated);
            ASSERT_LE(static_cast<double>(b.exact), b.relaxation);
        }
    }
    ASSERT_TRUE(hilbert_dim_bound(60, 60).saturated);
    ASSERT_THROW(hilbert_dim_bound(0, 3), ParameterError);
}
