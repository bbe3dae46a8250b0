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

#include <numeric>

#include "percolight/errors.h"

namespace percolight {

size_t sample_weighted(Rng &rng, std::span<const double> weights) {
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0)) {
        throw DomainError("sample_weighted: weights have no positive mass");
    }
    double target = uniform01(rng) * total;
    double acc = 0;
    size_t last_positive = 0;
    for (size_t k = 0; k < weights.size(); ++k) {
        if (weights[k] <= 0) {
            continue;
        }
        last_positive = k;
        acc += weights[k];
        if (target < acc) {
            return k;
        }
    }
    // Rounding pushed the target past the running sum.
    return last_positive;
}

}  // namespace percolight
