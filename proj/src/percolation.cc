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

#include "percolight/percolation.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "percolight/errors.h"

namespace percolight {

namespace {

void check_probability(double p, const char *name) {
    if (!(p >= 0 && p <= 1)) {
        throw ParameterError(std::string(name) + " must lie in [0, 1]");
    }
}

// Joins kept A-vertices that share a B-neighbor. `owner[b]` remembers the
// first kept A-vertex seen at b; B never enters the union-find.
template <typename OnDone>
void percolate(const BipartiteGraph &g, const std::vector<uint32_t> &kept, OnDone &&done) {
    UnionFind uf(g.num_a());
    std::vector<uint32_t> owner(g.num_b(), UINT32_MAX);
    for (uint32_t a : kept) {
        if (a >= g.num_a()) {
            throw ParameterError("kept vertex outside A");
        }
        for (uint32_t b : g.neighbors(a)) {
            if (owner[b] == UINT32_MAX) {
                owner[b] = a;
            } else {
                uf.unite(owner[b], a);
            }
        }
    }
    done(uf);
}

}  // namespace

VertexRemoval remove_vertices(const BipartiteGraph &g, double eta, Rng &rng) {
    check_probability(eta, "eta");
    VertexRemoval out;
    for (size_t a = 0; a < g.num_a(); ++a) {
        if (bernoulli(rng, eta)) {
            out.kept.push_back(static_cast<uint32_t>(a));
        } else {
            out.removed.push_back(static_cast<uint32_t>(a));
        }
    }
    return out;
}

ComponentSet connected_components(const BipartiteGraph &g, const std::vector<uint32_t> &kept) {
    ComponentSet out;
    std::vector<char> is_kept(g.num_a(), 0);
    for (uint32_t a : kept) {
        if (a >= g.num_a()) {
            throw ParameterError("kept vertex outside A");
        }
        is_kept[a] = 1;
    }
    for (size_t a = 0; a < g.num_a(); ++a) {
        if (!is_kept[a]) {
            out.removed.push_back(static_cast<uint32_t>(a));
        }
    }

    std::vector<uint32_t> sorted_kept;
    for (size_t a = 0; a < g.num_a(); ++a) {
        if (is_kept[a]) sorted_kept.push_back(static_cast<uint32_t>(a));
    }
    percolate(g, sorted_kept, [&](UnionFind &uf) {
        std::vector<uint32_t> slot(g.num_a(), UINT32_MAX);
        for (uint32_t a : sorted_kept) {
            uint32_t root = uf.find(a);
            if (slot[root] == UINT32_MAX) {
                slot[root] = static_cast<uint32_t>(out.components.size());
                out.components.emplace_back();
            }
            Component &c = out.components[slot[root]];
            c.a.push_back(a);
            for (uint32_t b : g.neighbors(a)) {
                c.b.push_back(b);
            }
        }
    });
    for (auto &c : out.components) {
        std::sort(c.b.begin(), c.b.end());
        c.b.erase(std::unique(c.b.begin(), c.b.end()), c.b.end());
        out.max_size = std::max(out.max_size, c.a.size());
    }
    return out;
}

ComponentStats component_stats(const BipartiteGraph &g, const std::vector<uint32_t> &kept) {
    ComponentStats stats;
    percolate(g, kept, [&](UnionFind &uf) {
        for (uint32_t a : kept) {
            if (uf.find(a) == a) {
                stats.num_components++;
                stats.max_size = std::max<size_t>(stats.max_size, uf.component_size(a));
            }
        }
    });
    return stats;
}

double tail_rate(double eta, size_t delta) {
    check_probability(eta, "eta");
    const double load = eta * static_cast<double>(delta) * static_cast<double>(delta);
    if (load >= 1) {
        throw DomainError("supercritical: eta*delta^2 = " + std::to_string(load) + " >= 1");
    }
    if (load <= 0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1 - load - std::log(load);
}

double y_star(size_t n, double epsilon, double eta, size_t delta) {
    if (n < 1) {
        throw ParameterError("y_star needs N >= 1");
    }
    if (!(epsilon > 0 && epsilon < 1)) {
        throw ParameterError("epsilon must lie in (0, 1)");
    }
    const double rate = tail_rate(eta, delta);
    if (std::isinf(rate)) {
        return 0;
    }
    return std::log(static_cast<double>(n) / epsilon) / rate;
}

double tail_bound_raw(size_t n, double y, double eta, size_t delta) {
    const double rate = tail_rate(eta, delta);
    if (y <= 0) {
        return static_cast<double>(n);
    }
    if (std::isinf(rate)) {
        return 0;
    }
    return static_cast<double>(n) * std::exp(-y * rate);
}

double tail_bound(size_t n, double y, double eta, size_t delta) {
    return std::clamp(tail_bound_raw(n, y, eta, delta), 0.0, 1.0);
}

}  // namespace percolight
