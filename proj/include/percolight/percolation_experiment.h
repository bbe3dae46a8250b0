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

#ifndef PERCOLIGHT_PERCOLATION_EXPERIMENT_H
#define PERCOLIGHT_PERCOLATION_EXPERIMENT_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "percolight/bipartite_graph.h"

namespace percolight {

/// Reference marker plotted alongside experiment output: the largest
/// permanent size computed to date (56×56). Not used in any logic.
inline constexpr size_t kLargestPermanentMarker = 56;

struct PercolationConfig {
    Architecture arch = Architecture::nonlocal;
    size_t delta = 9;
    std::vector<double> etas;
    std::vector<size_t> ns;
    size_t trials = 20;
    uint64_t seed = 0;
    /// Only used by the 1D generator.
    size_t sites_per_input = 1;
    /// 0 means std::thread::hardware_concurrency().
    size_t threads = 1;
};

struct PercolationRecord {
    Architecture arch;
    size_t n;
    size_t m;
    size_t delta;
    double eta;
    size_t trial;
    uint64_t seed;  // derived per-trial stream seed
    size_t max_component;
    size_t num_components;

    bool operator==(const PercolationRecord &) const = default;
};

/// For each (η, N, trial): fresh graph from the generator, vertex removal,
/// component statistics. Records are ordered (η, N, trial) regardless of the
/// thread count, and each trial's stream is derived from (seed, η-index,
/// N-index, trial), so output is identical for any scheduling.
std::vector<PercolationRecord> percolation_experiment(const PercolationConfig &config);

/// Aggregate of max_i |G_i| over the trials of one (η, N) cell.
struct PercolationSummary {
    double eta;
    size_t n;
    size_t trials;
    double mean_max;
    double median_max;
    size_t max_max;
};
std::vector<PercolationSummary> summarize(const std::vector<PercolationRecord> &records);

/// CSV body with header arch,N,M,delta,eta,trial,seed,max_component,num_components,marker.
/// The marker column repeats kLargestPermanentMarker for plotting.
std::string to_csv(const std::vector<PercolationRecord> &records);

/// Same records as one JSON object per line.
std::string to_jsonl(const std::vector<PercolationRecord> &records);

/// Single-line JSON metadata: generator kind, trials, seed, aggregation
/// choice, marker, version.
std::string experiment_metadata_json(const PercolationConfig &config);

/// Residual sums of squares of least-squares fits y ≈ a·ln N + c and
/// y ≈ b·N + c. `ratio` = linear_rss / log_rss.
struct ScalingFit {
    double log_slope;
    double log_intercept;
    double log_rss;
    double linear_slope;
    double linear_intercept;
    double linear_rss;
    double ratio;
};
ScalingFit compare_scaling_fits(const std::vector<double> &ns, const std::vector<double> &values);

}  // namespace percolight

#endif
