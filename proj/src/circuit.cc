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

#include "percolight/circuit.h"

#include <cmath>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "percolight/errors.h"

namespace percolight {

using nlohmann::json;

Eigen::Matrix2cd bs_unitary(double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex phase = std::polar(1.0, phi);
    Eigen::Matrix2cd g;
    g << c, -phase * s, std::conj(phase) * s, c;
    return g;
}

Circuit::Circuit(size_t num_modes) : num_modes_(num_modes) {
    if (num_modes == 0) {
        throw StructuralError("circuit needs at least one mode");
    }
}

Circuit::Circuit(size_t num_modes, std::vector<std::vector<BeamSplitter>> layers) : Circuit(num_modes) {
    for (auto &layer : layers) {
        add_layer(std::move(layer));
    }
}

void Circuit::validate_layer(const std::vector<BeamSplitter> &layer) const {
    std::vector<bool> used(num_modes_, false);
    for (const auto &bs : layer) {
        if (bs.i >= num_modes_ || bs.j >= num_modes_) {
            throw StructuralError(
                "beam splitter on modes (" + std::to_string(bs.i) + ", " + std::to_string(bs.j) +
                ") outside [0, " + std::to_string(num_modes_) + ")");
        }
        if (bs.i == bs.j) {
            throw StructuralError("beam splitter acts on mode " + std::to_string(bs.i) + " twice");
        }
        if (used[bs.i] || used[bs.j]) {
            throw StructuralError(
                "layer " + std::to_string(layers_.size()) + " reuses mode " +
                std::to_string(used[bs.i] ? bs.i : bs.j));
        }
        used[bs.i] = true;
        used[bs.j] = true;
    }
}

void Circuit::add_layer(std::vector<BeamSplitter> layer) {
    validate_layer(layer);
    for (auto &bs : layer) {
        bs.layer = layers_.size();
    }
    layers_.push_back(std::move(layer));
}

Circuit Circuit::from_json(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception &e) {
        throw ParameterError(std::string("circuit file is not valid JSON: ") + e.what());
    }
    if (!doc.contains("modes") || !doc["modes"].is_number_unsigned()) {
        throw StructuralError("circuit file needs a nonnegative integer \"modes\" field");
    }
    Circuit circuit(doc["modes"].get<size_t>());
    if (doc.contains("layers")) {
        for (const auto &layer_doc : doc["layers"]) {
            std::vector<BeamSplitter> layer;
            for (const auto &g : layer_doc) {
                BeamSplitter bs;
                bs.i = g.at("i").get<size_t>();
                bs.j = g.at("j").get<size_t>();
                bs.theta = g.value("theta", 0.0);
                bs.phi = g.value("phi", 0.0);
                layer.push_back(bs);
            }
            circuit.add_layer(std::move(layer));
        }
    }
    return circuit;
}

std::string Circuit::to_json() const {
    json layers = json::array();
    for (const auto &layer : layers_) {
        json l = json::array();
        for (const auto &bs : layer) {
            l.push_back({{"i", bs.i}, {"j", bs.j}, {"theta", bs.theta}, {"phi", bs.phi}});
        }
        layers.push_back(std::move(l));
    }
    json doc = {{"modes", num_modes_}, {"layers", std::move(layers)}};
    return doc.dump();
}

ComplexMatrix build_unitary(const Circuit &circuit) {
    const auto m = static_cast<Eigen::Index>(circuit.num_modes());
    ComplexMatrix u = ComplexMatrix::Identity(m, m);
    for (const auto &layer : circuit.layers()) {
        // Right-multiplying by a layer only mixes columns i and j.
        for (const auto &bs : layer) {
            Eigen::Matrix2cd g = bs_unitary(bs.theta, bs.phi);
            const auto i = static_cast<Eigen::Index>(bs.i);
            const auto j = static_cast<Eigen::Index>(bs.j);
            Eigen::VectorXcd ci = u.col(i);
            Eigen::VectorXcd cj = u.col(j);
            u.col(i) = ci * g(0, 0) + cj * g(1, 0);
            u.col(j) = ci * g(0, 1) + cj * g(1, 1);
        }
    }
    return u;
}

InputSpec InputSpec::single_photons(const std::vector<size_t> &modes) {
    InputSpec spec;
    for (size_t m : modes) {
        spec.occupations[m] = 1;
    }
    return spec;
}

InputSpec InputSpec::from_json(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception &e) {
        throw ParameterError(std::string("input file is not valid JSON: ") + e.what());
    }
    InputSpec spec;
    if (doc.contains("modes")) {
        for (const auto &m : doc["modes"]) {
            spec.occupations[m.get<size_t>()] += 1;
        }
    }
    if (doc.contains("occupations")) {
        for (const auto &[key, value] : doc["occupations"].items()) {
            auto n = value.get<uint32_t>();
            if (n > 0) {
                spec.occupations[std::stoul(key)] += n;
            }
        }
    }
    if (!doc.contains("modes") && !doc.contains("occupations")) {
        throw ParameterError("input file needs \"modes\" or \"occupations\"");
    }
    return spec;
}

std::string InputSpec::to_json() const {
    json occ = json::object();
    for (const auto &[mode, n] : occupations) {
        occ[std::to_string(mode)] = n;
    }
    return json{{"occupations", occ}}.dump();
}

std::vector<size_t> InputSpec::modes() const {
    std::vector<size_t> out;
    for (const auto &[mode, n] : occupations) {
        if (n > 0) {
            out.push_back(mode);
        }
    }
    return out;
}

uint32_t InputSpec::total_photons() const {
    uint32_t total = 0;
    for (const auto &[mode, n] : occupations) {
        total += n;
    }
    return total;
}

uint32_t InputSpec::max_photon() const {
    uint32_t best = 0;
    for (const auto &[mode, n] : occupations) {
        best = std::max(best, n);
    }
    return best;
}

bool InputSpec::all_single() const {
    for (const auto &[mode, n] : occupations) {
        if (n != 1) {
            return false;
        }
    }
    return true;
}

std::vector<uint32_t> InputSpec::dense(size_t num_modes) const {
    std::vector<uint32_t> out(num_modes, 0);
    for (const auto &[mode, n] : occupations) {
        if (mode >= num_modes) {
            throw ParameterError("input mode " + std::to_string(mode) + " outside the circuit");
        }
        out[mode] = n;
    }
    return out;
}

Circuit random_circuit(size_t num_modes, size_t depth, Rng &rng, bool local) {
    Circuit circuit(num_modes);
    for (size_t d = 0; d < depth; ++d) {
        std::vector<BeamSplitter> layer;
        if (local) {
            for (size_t i = d % 2; i + 1 < num_modes; i += 2) {
                layer.push_back({0, i, i + 1, uniform01(rng) * std::numbers::pi, uniform01(rng) * 2 * std::numbers::pi});
            }
        } else {
            std::vector<size_t> order(num_modes);
            for (size_t k = 0; k < num_modes; ++k) order[k] = k;
            for (size_t k = num_modes; k > 1; --k) {
                std::swap(order[k - 1], order[uniform_below(rng, k)]);
            }
            for (size_t k = 0; k + 1 < num_modes; k += 2) {
                layer.push_back(
                    {0, order[k], order[k + 1], uniform01(rng) * std::numbers::pi, uniform01(rng) * 2 * std::numbers::pi});
            }
        }
        circuit.add_layer(std::move(layer));
    }
    return circuit;
}

}  // namespace percolight
