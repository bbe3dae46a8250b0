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

#ifndef PERCOLIGHT_BIPARTITE_GRAPH_H
#define PERCOLIGHT_BIPARTITE_GRAPH_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "percolight/circuit.h"
#include "percolight/rng.h"

namespace percolight {

/// Input/output lightcone graph G = (A, B, E).
///
/// Vertices are addressed by dense indices: A-index in [0, |A|) and B-index in
/// [0, |B|). `a_id(k)` / `b_id(k)` map them back to mode numbers. Adjacency is
/// stored A -> B in compressed-row form with sorted, distinct neighbor lists.
class BipartiteGraph {
   public:
    BipartiteGraph() = default;

    /// `adjacency[k]` lists B-indices adjacent to A-vertex k. Duplicates are
    /// removed; out-of-range endpoints throw StructuralError.
    BipartiteGraph(
        std::vector<uint32_t> a_ids, std::vector<uint32_t> b_ids, const std::vector<std::vector<uint32_t>> &adjacency);

    size_t num_a() const { return a_ids_.size(); }
    size_t num_b() const { return b_ids_.size(); }
    size_t num_edges() const { return targets_.size(); }
    uint32_t a_id(size_t k) const { return a_ids_[k]; }
    uint32_t b_id(size_t k) const { return b_ids_[k]; }
    const std::vector<uint32_t> &a_ids() const { return a_ids_; }
    const std::vector<uint32_t> &b_ids() const { return b_ids_; }

    std::span<const uint32_t> neighbors(size_t a) const {
        return {targets_.data() + offsets_[a], targets_.data() + offsets_[a + 1]};
    }
    size_t a_degree(size_t a) const { return offsets_[a + 1] - offsets_[a]; }
    size_t b_degree(size_t b) const { return b_degrees_[b]; }

    /// Δ: maximum incident-edge count over both vertex sets (0 when empty).
    size_t delta() const { return delta_; }

    /// Edge-list text: header "N M DELTA", then one "a_id b_id" per line.
    std::string to_edge_list() const;

    bool operator==(const BipartiteGraph &) const = default;

   private:
    std::vector<uint32_t> a_ids_;
    std::vector<uint32_t> b_ids_;
    std::vector<size_t> offsets_{0};
    std::vector<uint32_t> targets_;
    std::vector<uint32_t> b_degrees_;
    size_t delta_ = 0;
};

/// Structural lightcone graph: A = occupied input modes, B = output modes
/// reachable from at least one of them, (v, w) ∈ E iff w is reachable from v
/// through gate connectivity. A and B are sorted by mode number.
BipartiteGraph lightcone_bipartite(const Circuit &circuit, const InputSpec &input);

size_t max_degree(const BipartiteGraph &g);

/// Synthetic all-to-all architecture: 8N output modes, each input draws Δ
/// distinct uniformly random neighbors.
BipartiteGraph gen_nonlocal(size_t n_inputs, size_t delta, Rng &rng);

/// Synthetic 1D architecture: `sites_per_input`·N output modes on a line,
/// input k sits at site ⌊(k + 1/2)·sites_per_input⌋ and connects to the Δ
/// nearest output sites (ties and boundary clamping resolved toward lower
/// indices). Deterministic; `rng` is accepted for interface symmetry and not
/// consumed.
BipartiteGraph gen_1d(size_t n_inputs, size_t delta, Rng &rng, size_t sites_per_input = 1);

enum class Architecture { nonlocal, one_d };

std::string to_string(Architecture arch);
Architecture parse_architecture(const std::string &name);

}  // namespace percolight

#endif
