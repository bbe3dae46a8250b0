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

#include "percolight/bipartite_graph.h"

#include <algorithm>
#include <sstream>

#include "percolight/errors.h"

namespace percolight {

BipartiteGraph::BipartiteGraph(
    std::vector<uint32_t> a_ids, std::vector<uint32_t> b_ids, const std::vector<std::vector<uint32_t>> &adjacency)
    : a_ids_(std::move(a_ids)), b_ids_(std::move(b_ids)), b_degrees_(b_ids_.size(), 0) {
    if (adjacency.size() != a_ids_.size()) {
        throw StructuralError("adjacency list count differs from |A|");
    }
    offsets_.reserve(a_ids_.size() + 1);
    std::vector<uint32_t> row;
    for (const auto &nbrs : adjacency) {
        row.assign(nbrs.begin(), nbrs.end());
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        for (uint32_t b : row) {
            if (b >= b_ids_.size()) {
                throw StructuralError("edge endpoint " + std::to_string(b) + " outside B");
            }
            b_degrees_[b]++;
        }
        delta_ = std::max(delta_, row.size());
        targets_.insert(targets_.end(), row.begin(), row.end());
        offsets_.push_back(targets_.size());
    }
    for (uint32_t d : b_degrees_) {
        delta_ = std::max<size_t>(delta_, d);
    }
}

std::string BipartiteGraph::to_edge_list() const {
    std::ostringstream out;
    out << num_a() << ' ' << num_b() << ' ' << delta_ << '\n';
    for (size_t a = 0; a < num_a(); ++a) {
        for (uint32_t b : neighbors(a)) {
            out << a_ids_[a] << ' ' << b_ids_[b] << '\n';
        }
    }
    return out.str();
}

BipartiteGraph lightcone_bipartite(const Circuit &circuit, const InputSpec &input) {
    const size_t m = circuit.num_modes();
    std::vector<size_t> sources = input.modes();
    for (size_t v : sources) {
        if (v >= m) {
            throw ParameterError("input mode " + std::to_string(v) + " outside [0, " + std::to_string(m) + ")");
        }
    }

    // Forward reachability of each source, one layer at a time.
    std::vector<std::vector<uint32_t>> reach_modes;
    std::vector<bool> in_b(m, false);
    std::vector<char> reach(m);
    for (size_t v : sources) {
        std::fill(reach.begin(), reach.end(), 0);
        reach[v] = 1;
        for (const auto &layer : circuit.layers()) {
            for (const auto &bs : layer) {
                if (reach[bs.i] || reach[bs.j]) {
                    reach[bs.i] = reach[bs.j] = 1;
                }
            }
        }
        std::vector<uint32_t> modes;
        for (size_t w = 0; w < m; ++w) {
            if (reach[w]) {
                modes.push_back(static_cast<uint32_t>(w));
                in_b[w] = true;
            }
        }
        reach_modes.push_back(std::move(modes));
    }

    std::vector<uint32_t> b_ids;
    std::vector<uint32_t> b_index(m, UINT32_MAX);
    for (size_t w = 0; w < m; ++w) {
        if (in_b[w]) {
            b_index[w] = static_cast<uint32_t>(b_ids.size());
            b_ids.push_back(static_cast<uint32_t>(w));
        }
    }
    for (auto &modes : reach_modes) {
        for (auto &w : modes) {
            w = b_index[w];
        }
    }
    std::vector<uint32_t> a_ids(sources.begin(), sources.end());
    return BipartiteGraph(std::move(a_ids), std::move(b_ids), reach_modes);
}

size_t max_degree(const BipartiteGraph &g) {
    return g.delta();
}

namespace {

std::vector<uint32_t> iota_ids(size_t n) {
    std::vector<uint32_t> ids(n);
    for (size_t k = 0; k < n; ++k) ids[k] = static_cast<uint32_t>(k);
    return ids;
}

void check_generator_args(size_t n_inputs, size_t delta, size_t num_outputs) {
    if (n_inputs == 0) {
        throw ParameterError("generator needs N >= 1");
    }
    if (delta == 0) {
        throw ParameterError("generator needs delta >= 1");
    }
    if (delta > num_outputs) {
        throw ParameterError(
            "delta " + std::to_string(delta) + " exceeds the number of output modes " + std::to_string(num_outputs));
    }
    if (num_outputs > UINT32_MAX) {
        throw ParameterError("graph too large for 32-bit vertex ids");
    }
}

}  // namespace

BipartiteGraph gen_nonlocal(size_t n_inputs, size_t delta, Rng &rng) {
    const size_t m = 8 * n_inputs;
    check_generator_args(n_inputs, delta, m);
    std::vector<std::vector<uint32_t>> adjacency(n_inputs);
    for (auto &nbrs : adjacency) {
        // Floyd's algorithm: delta distinct values from [0, m).
        nbrs.reserve(delta);
        for (size_t j = m - delta; j < m; ++j) {
            auto t = static_cast<uint32_t>(uniform_below(rng, j + 1));
            if (std::find(nbrs.begin(), nbrs.end(), t) == nbrs.end()) {
                nbrs.push_back(t);
            } else {
                nbrs.push_back(static_cast<uint32_t>(j));
            }
        }
    }
    return BipartiteGraph(iota_ids(n_inputs), iota_ids(m), adjacency);
}

BipartiteGraph gen_1d(size_t n_inputs, size_t delta, Rng &, size_t sites_per_input) {
    if (sites_per_input == 0) {
        throw ParameterError("sites_per_input must be >= 1");
    }
    const size_t m = sites_per_input * n_inputs;
    check_generator_args(n_inputs, delta, m);
    std::vector<std::vector<uint32_t>> adjacency(n_inputs);
    for (size_t k = 0; k < n_inputs; ++k) {
        const auto site = static_cast<int64_t>(k * sites_per_input + sites_per_input / 2);
        // For even delta the last tied neighbor is taken on the lower side.
        int64_t start = site - static_cast<int64_t>(delta / 2);
        start = std::max<int64_t>(start, 0);
        start = std::min<int64_t>(start, static_cast<int64_t>(m - delta));
        auto &nbrs = adjacency[k];
        for (size_t t = 0; t < delta; ++t) {
            nbrs.push_back(static_cast<uint32_t>(start + static_cast<int64_t>(t)));
        }
    }
    return BipartiteGraph(iota_ids(n_inputs), iota_ids(m), adjacency);
}

std::string to_string(Architecture arch) {
    return arch == Architecture::nonlocal ? "nonlocal" : "1d";
}

Architecture parse_architecture(const std::string &name) {
    if (name == "nonlocal") return Architecture::nonlocal;
    if (name == "1d") return Architecture::one_d;
    throw ParameterError("unknown architecture '" + name + "' (expected nonlocal or 1d)");
}

}  // namespace percolight
