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

#include "percolight/rng.h"

#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "percolight/errors.h"

using namespace percolight;

TEST(rng, derive_seed_depends_on_every_index) {
    std::set<uint64_t> seen;
    for (uint64_t a = 0; a < 8; ++a) {
        for (uint64_t b = 0; b < 8; ++b) {
            seen.insert(derive_seed(42, {a, b}));
        }
    }
    ASSERT_EQ(seen.size(), 64u);
    ASSERT_NE(derive_seed(42, {1, 2}), derive_seed(42, {2, 1}));
    ASSERT_NE(derive_seed(42, {1}), derive_seed(43, {1}));
    ASSERT_EQ(derive_seed(7, {3, 4}), derive_seed(7, {3, 4}));
}

TEST(rng, streams_are_reproducible) {
    Rng a = make_stream(5, {1, 2, 3});
    Rng b = make_stream(5, {1, 2, 3});
    for (int k = 0; k < 100; ++k) {
        ASSERT_EQ(a(), b());
    }
}

TEST(rng, uniform01_range_and_mean) {
    Rng rng(1);
    double sum = 0;
    constexpr int n = 200000;
    for (int k = 0; k < n; ++k) {
        double u = uniform01(rng);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    ASSERT_NEAR(sum / n, 0.5, 0.005);
}

TEST(rng, bernoulli_extremes_are_exact) {
    Rng rng(2);
    for (int k = 0; k < 1000; ++k) {
        ASSERT_TRUE(bernoulli(rng, 1.0));
        ASSERT_FALSE(bernoulli(rng, 0.0));
    }
}

TEST(rng, uniform_below_is_unbiased) {
    Rng rng(3);
    std::vector<int> counts(7, 0);
    constexpr int n = 70000;
    for (int k = 0; k < n; ++k) {
        counts[uniform_below(rng, 7)]++;
    }
    for (int c : counts) {
        // 10000 expected, sd ~ 93.
        ASSERT_NEAR(c, 10000, 500);
    }
}

TEST(rng, sample_weighted_matches_weights) {
    Rng rng(4);
    std::vector<double> w{0.0, 1.0, 3.0, 0.0};
    std::vector<int> counts(4, 0);
    constexpr int n = 40000;
    for (int k = 0; k < n; ++k) {
        counts[sample_weighted(rng, w)]++;
    }
    ASSERT_EQ(counts[0], 0);
    ASSERT_EQ(counts[3], 0);
    ASSERT_NEAR(counts[2] / double(n), 0.75, 0.01);
}

TEST(rng, sample_weighted_rejects_zero_mass) {
    Rng rng(5);
    std::vector<double> w{0.0, 0.0};
    ASSERT_THROW(sample_weighted(rng, w), DomainError);
}
