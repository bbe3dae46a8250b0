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

#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "percolight/acceptance.h"
#include "percolight/boson_sampling.h"
#include "percolight/circuit.h"
#include "percolight/errors.h"
#include "percolight/mps.h"
#include "percolight/noise.h"
#include "percolight/noisy_sampler.h"
#include "percolight/percolation.h"
#include "percolight/percolation_experiment.h"
#include "percolight/permanent.h"
#include "percolight/version.h"

namespace py = pybind11;
using namespace percolight;

namespace {

NoiseSpec make_noise(const std::string &kind, double eta, double x, std::optional<double> eta_per_layer) {
    NoiseSpec noise;
    noise.kind = parse_noise_kind(kind);
    noise.eta = eta;
    noise.x = x;
    noise.eta_per_layer = eta_per_layer;
    return noise;
}

py::dict record_dict(const SampleRecord &r) {
    py::dict d;
    d["outcome"] = r.outcome;
    d["lost"] = r.lost_photons;
    d["restarts"] = r.restarts;
    d["component_sizes"] = r.component_sizes;
    return d;
}

py::dict distribution_dict(const Distribution &dist) {
    py::dict d;
    for (const auto &[pattern, p] : dist) {
        d[py::tuple(py::cast(pattern))] = p;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Percolation-based simulation of noisy linear-optical circuits";
    m.attr("__version__") = kVersion;

    py::register_exception<ThresholdError>(m, "ThresholdError", PyExc_RuntimeError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
    py::register_exception<DiagnosticError>(m, "DiagnosticError", PyExc_RuntimeError);

    m.def("tail_rate", &tail_rate, py::arg("eta"), py::arg("delta"));
    m.def("tail_bound", &tail_bound, py::arg("n"), py::arg("y"), py::arg("eta"), py::arg("delta"));
    m.def("y_star", &y_star, py::arg("n"), py::arg("epsilon"), py::arg("eta"), py::arg("delta"));

    m.def(
        "classical_threshold",
        [](size_t delta, const std::string &kind, double eta, double x, std::optional<double> eta_per_layer,
           std::optional<size_t> depth, std::optional<uint32_t> fock_n) {
            const auto r = classical_threshold(delta, make_noise(kind, eta, x, eta_per_layer), fock_n, depth);
            py::dict d;
            d["parameter"] = r.parameter;
            d["margin"] = r.margin;
            d["simulable"] = r.simulable;
            return d;
        },
        py::arg("delta"), py::arg("kind") = "loss", py::arg("eta") = 1.0, py::arg("x") = 1.0,
        py::arg("eta_per_layer") = py::none(), py::arg("depth") = py::none(), py::arg("fock_n") = py::none());

    m.def(
        "percolate",
        [](const std::string &arch, size_t delta, std::vector<double> etas, std::vector<size_t> ns, size_t trials,
           uint64_t seed, size_t sites_per_input, size_t threads) {
            PercolationConfig config;
            config.arch = parse_architecture(arch);
            config.delta = delta;
            config.etas = std::move(etas);
            config.ns = std::move(ns);
            config.trials = trials;
            config.seed = seed;
            config.sites_per_input = sites_per_input;
            config.threads = threads;
            std::vector<PercolationRecord> records;
            {
                py::gil_scoped_release release;
                records = percolation_experiment(config);
            }
            py::list out;
            for (const auto &r : records) {
                py::dict d;
                d["N"] = r.n;
                d["M"] = r.m;
                d["eta"] = r.eta;
                d["trial"] = r.trial;
                d["seed"] = r.seed;
                d["max_component"] = r.max_component;
                d["num_components"] = r.num_components;
                out.append(d);
            }
            return out;
        },
        py::arg("arch") = "nonlocal", py::arg("delta") = 9, py::arg("etas"), py::arg("ns"), py::arg("trials") = 20,
        py::arg("seed") = 0, py::arg("sites_per_input") = 1, py::arg("threads") = 1);

    m.def(
        "build_unitary",
        [](const std::string &circuit_json) { return build_unitary(Circuit::from_json(circuit_json)); },
        py::arg("circuit_json"));

    m.def("permanent", &permanent, py::arg("matrix"));

    m.def(
        "sample",
        [](const std::string &circuit_json, const std::string &input_json, size_t num_samples, uint64_t seed,
           const std::string &kind, double eta, double x, std::optional<double> eta_per_layer, double epsilon,
           bool force, std::optional<double> y_star_override, size_t threads) {
            SamplerOptions options;
            options.force = force;
            options.y_star_override = y_star_override;
            const NoisySampler sampler(
                Circuit::from_json(circuit_json), InputSpec::from_json(input_json),
                make_noise(kind, eta, x, eta_per_layer), epsilon, options);
            std::vector<SampleRecord> records;
            {
                py::gil_scoped_release release;
                records = sampler.sample_many(num_samples, seed, threads);
            }
            py::list out;
            for (const auto &r : records) out.append(record_dict(r));
            return out;
        },
        py::arg("circuit_json"), py::arg("input_json"), py::arg("num_samples") = 1, py::arg("seed") = 0,
        py::arg("kind") = "loss", py::arg("eta") = 1.0, py::arg("x") = 1.0, py::arg("eta_per_layer") = py::none(),
        py::arg("epsilon") = 0.01, py::arg("force") = false, py::arg("y_star") = py::none(), py::arg("threads") = 1);

    m.def(
        "oracle_distribution",
        [](const std::string &circuit_json, const std::string &input_json, const std::string &kind, double eta,
           double x) {
            return distribution_dict(brute_force_oracle(
                Circuit::from_json(circuit_json), InputSpec::from_json(input_json),
                make_noise(kind, eta, x, std::nullopt)));
        },
        py::arg("circuit_json"), py::arg("input_json"), py::arg("kind") = "loss", py::arg("eta") = 1.0,
        py::arg("x") = 1.0);

    m.def(
        "mps_evolve",
        [](const std::string &circuit_json, std::vector<uint32_t> occupations, size_t local_dim, double threshold,
           size_t max_bond) {
            const Circuit circuit = Circuit::from_json(circuit_json);
            auto state = MpsState::from_fock(occupations, local_dim, MpsOptions{.max_bond = max_bond});
            state.apply_circuit(circuit, threshold);
            py::dict d;
            d["bond_dims"] = state.bond_dims();
            d["max_bond"] = state.max_bond_seen();
            d["discarded_weight"] = state.discarded_weight();
            d["state"] = state.to_dense();
            return d;
        },
        py::arg("circuit_json"), py::arg("occupations"), py::arg("local_dim"), py::arg("threshold") = 0.0,
        py::arg("max_bond") = 4096);

    m.def(
        "verify",
        [](const std::string &config_json) {
            const AcceptanceConfig config = AcceptanceConfig::from_json(config_json);
            std::vector<CheckResult> results;
            {
                py::gil_scoped_release release;
                results = run_acceptance(config);
            }
            py::list out;
            for (const auto &r : results) {
                py::dict d;
                d["id"] = r.id;
                d["name"] = r.name;
                d["passed"] = r.passed;
                d["detail"] = r.detail;
                d["seconds"] = r.seconds;
                out.append(d);
            }
            return out;
        },
        py::arg("config_json") = "{}");
}
