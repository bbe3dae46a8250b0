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

#ifndef PERCOLIGHT_PERCOLATION_H
#define PERCOLIGHT_PERCOLATION_H

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "percolight/bipartite_graph.h"
#include "percolight/rng.h"

namespace percolight {

/// Disjoint-set forest with path compression and union by size.
class UnionFind {
   public:
    explicit UnionFind(size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), uint32_t{0});
    }

    uint32_t find(uint32_t x) {
        uint32_t root = x;
        while (parent_[root] != root) {
            root = parent_[root];
        }
        while (parent_[x] != root) {
            uint32_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    /// Returns false if x and y were already joined.
    bool unite(uint32_t x, uint32_t y) {
        x = find(x);
        y = find(y);
        if (x == y) {
            return false;
        }
        if (size_[x] < size_[y]) {
            std::swap(x, y);
        }
        parent_[y] = x;
        size_[x] += size_[y];
        return true;
    }

    uint32_t component_size(uint32_t x) { return size_[find(x)]; }

   private:
    std::vector<uint32_t> parent_;
    std::vector<uint32_t> size_;
};

struct VertexRemoval {
    std::vector<uint32_t> kept;     // A-indices, ascending
    std::vector<uint32_t> removed;  // A-indices, ascending
};

/// Keeps each A-vertex independently with probability eta.
VertexRemoval remove_vertices(const BipartiteGraph &g, double eta, Rng &rng);

struct Component {
    std::vector<uint32_t> a;  // A-indices, ascending
    std::vector<uint32_t> b;  // B-indices, ascending
    size_t size() const { return a.size(); }
};

/// Components of the graph restricted to the kept A-vertices. Component size
/// counts A-vertices only. Components are ordered by their smallest A-index.
struct ComponentSet {
    std::vector<Component> components;
    std::vector<uint32_t> removed;
    size_t max_size = 0;
};

/// Full component extraction (A and B subsets).
ComponentSet connected_components(const BipartiteGraph &g, const std::vector<uint32_t> &kept);

/// Only component sizes; the hot loop of the percolation experiment.
struct ComponentStats {
    size_t max_size = 0;
    size_t num_components = 0;
};
ComponentStats component_stats(const BipartiteGraph &g, const std::vector<uint32_t> &kept);

/// Exponent rate 1 - ηΔ² - ln(ηΔ²) of the component-size tail bound.
/// Throws DomainError unless 0 < ηΔ² < 1.
double tail_rate(double eta, size_t delta);

/// y* = ln(N/ε) / (1 - ηΔ² - ln ηΔ²). Throws DomainError when ηΔ² >= 1
/// ("supercritical") and ParameterError for N < 1 or ε outside (0, 1).
/// Returns 0 when η = 0 (every vertex is removed).
double y_star(size_t n, double epsilon, double eta, size_t delta);

/// N·exp(-y·(1 - ηΔ² - ln ηΔ²)) clamped to [0, 1].
double tail_bound(size_t n, double y, double eta, size_t delta);

/// Same bound without clamping, for callers that need the raw value.
double tail_bound_raw(size_t n, double y, double eta, size_t delta);

}  // namespace percolight

#endif
