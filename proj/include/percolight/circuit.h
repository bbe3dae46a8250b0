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

#ifndef PERCOLIGHT_CIRCUIT_H
#define PERCOLIGHT_CIRCUIT_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "percolight/rng.h"

namespace percolight {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// A two-mode beam splitter acting on modes (i, j) in a given layer.
struct BeamSplitter {
    size_t layer = 0;
    size_t i = 0;
    size_t j = 1;
    double theta = 0;
    double phi = 0;

    bool operator==(const BeamSplitter &) const = default;
};

/// Returns [[cos θ, -e^{iφ} sin θ], [e^{-iφ} sin θ, cos θ]].
///
/// Acting on creation operators: a_i^† -> g(0,0) a_i^† + g(0,1) a_j^† and
/// a_j^† -> g(1,0) a_i^† + g(1,1) a_j^†.
Eigen::Matrix2cd bs_unitary(double theta, double phi);

/// Layered beam-splitter description of an M-mode interferometer.
///
/// Every layer is parallel-implementable: no mode appears twice in one layer.
/// Construction validates this and throws StructuralError otherwise.
class Circuit {
   public:
    explicit Circuit(size_t num_modes);
    Circuit(size_t num_modes, std::vector<std::vector<BeamSplitter>> layers);

    /// Appends a new layer; the `layer` field of each gate is overwritten with
    /// the layer index.
    void add_layer(std::vector<BeamSplitter> layer);

    size_t num_modes() const { return num_modes_; }
    size_t depth() const { return layers_.size(); }
    const std::vector<std::vector<BeamSplitter>> &layers() const { return layers_; }

    /// {"modes": M, "layers": [[{"i":..,"j":..,"theta":..,"phi":..}, ...], ...]}
    static Circuit from_json(const std::string &text);
    std::string to_json() const;

    bool operator==(const Circuit &) const = default;

   private:
    void validate_layer(const std::vector<BeamSplitter> &layer) const;

    size_t num_modes_;
    std::vector<std::vector<BeamSplitter>> layers_;
};

/// M×M unitary of the circuit in the row convention a_v^† -> Σ_w U(v,w) a_w^†:
/// rows are input modes, columns output modes. Layers compose left to right.
ComplexMatrix build_unitary(const Circuit &circuit);

/// Photon occupations of the input modes; absent modes are vacuum.
struct InputSpec {
    std::map<size_t, uint32_t> occupations;

    static InputSpec single_photons(const std::vector<size_t> &modes);

    /// Accepts {"modes": [..]} (one photon each) or
    /// {"occupations": {"<mode>": n, ...}}.
    static InputSpec from_json(const std::string &text);
    std::string to_json() const;

    std::vector<size_t> modes() const;
    uint32_t total_photons() const;
    uint32_t max_photon() const;
    bool all_single() const;
    /// Dense occupation vector of length num_modes.
    std::vector<uint32_t> dense(size_t num_modes) const;

    bool operator==(const InputSpec &) const = default;
};

/// Random circuit used by tests and the verification suite: `depth` layers,
/// each pairing a random subset of modes with random angles. With `local`
/// set, gates only act on neighboring modes (i, i+1).
Circuit random_circuit(size_t num_modes, size_t depth, Rng &rng, bool local = false);

}  // namespace percolight

#endif
