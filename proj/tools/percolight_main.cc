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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "percolight/acceptance.h"
#include "percolight/bipartite_graph.h"
#include "percolight/boson_sampling.h"
#include "percolight/circuit.h"
#include "percolight/errors.h"
#include "percolight/mps.h"
#include "percolight/noise.h"
#include "percolight/noisy_sampler.h"
#include "percolight/percolation.h"
#include "percolight/percolation_experiment.h"
#include "percolight/rng.h"
#include "percolight/version.h"

using namespace percolight;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitThreshold = 3;
constexpr int kExitVerification = 4;

// Expands `--config FILE` into ordinary options. The file is a flat JSON
// object keyed by option name (underscores and dashes are interchangeable);
// a key is skipped when the same option already appears on the command line.
// Arrays become comma-joined lists, booleans toggle flags.
std::vector<std::string> expand_config(const std::vector<std::string> &args) {
    std::string path;
    for (size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config" && k + 1 < args.size()) {
            path = args[k + 1];
        } else if (args[k].starts_with("--config=")) {
            path = args[k].substr(9);
        }
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) {
        throw ParameterError("cannot read config file " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception &e) {
        throw ParameterError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParameterError("config file must hold a JSON object");
    }

    auto given = [&](const std::string &flag) {
        for (const auto &a : args) {
            if (a == flag || a.starts_with(flag + "=")) return true;
        }
        return false;
    };
    auto scalar = [](const json &v) { return v.is_string() ? v.get<std::string>() : v.dump(); };

    std::vector<std::string> out = args;
    for (const auto &[key, value] : doc.items()) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (flag == "--config" || given(flag)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) out.push_back(flag);
        } else if (value.is_array()) {
            std::vector<std::string> parts;
            for (const auto &v : value) parts.push_back(scalar(v));
            out.push_back(flag);
            out.push_back(fmt::format("{}", fmt::join(parts, ",")));
        } else {
            out.push_back(flag);
            out.push_back(scalar(value));
        }
    }
    return out;
}

struct Common {
    uint64_t seed = 0;
    std::string out;
    std::string format;
    std::string config;
};

void add_common(CLI::App *sub, Common &common, const std::string &default_format) {
    common.format = default_format;
    sub->add_option("--seed", common.seed, "64-bit base seed; recorded in the output")->capture_default_str();
    sub->add_option("--out", common.out, "Output path (default: stdout)");
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    sub->add_option("--config", common.config, "JSON file with option values; command-line flags take precedence");
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParameterError("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const Common &common, const std::string &body) {
    if (common.out.empty()) {
        std::cout << body << std::flush;
        return;
    }
    std::ofstream out(common.out, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ParameterError("cannot write " + common.out);
    }
    out << body;
}

// Finite doubles as numbers; infinities as null so the JSON stays valid.
json finite_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

// Flat key,value CSV of the scalar fields of a JSON object.
std::string json_to_kv_csv(const json &doc) {
    std::string out = "key,value\n";
    for (const auto &[key, value] : doc.items()) {
        if (value.is_object()) {
            for (const auto &[sub, v] : value.items()) out += fmt::format("{}.{},{}\n", key, sub, v.dump());
        } else {
            out += fmt::format("{},{}\n", key, value.dump());
        }
    }
    return out;
}

std::string render_report(const Common &common, const json &doc) {
    return common.format == "csv" ? json_to_kv_csv(doc) : doc.dump() + "\n";
}

// ---------------------------------------------------------------------------

struct PercolateArgs {
    std::string arch = "nonlocal";
    size_t delta = 9;
    std::vector<double> etas;
    std::vector<size_t> ns;
    size_t trials = 20;
    size_t sites_per_input = 1;
    size_t threads = 1;
};

int run_percolate(const Common &common, const PercolateArgs &args) {
    PercolationConfig config;
    config.arch = parse_architecture(args.arch);
    config.delta = args.delta;
    config.etas = args.etas;
    config.ns = args.ns;
    config.trials = args.trials;
    config.seed = common.seed;
    config.sites_per_input = args.sites_per_input;
    config.threads = args.threads;
    const auto records = percolation_experiment(config);

    std::string body;
    if (common.format == "csv") {
        body = "# " + experiment_metadata_json(config) + "\n" + to_csv(records);
    } else {
        body = json{{"meta", json::parse(experiment_metadata_json(config))}}.dump() + "\n" + to_jsonl(records);
    }
    emit(common, body);

    for (const auto &s : summarize(records)) {
        std::cerr << fmt::format(
            "eta={:<6} N={:<8} mean_max={:<10.2f} median_max={:<8} max={}\n", s.eta, s.n, s.mean_max, s.median_max, s.max_max);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct NoiseArgs {
    std::optional<double> eta;
    std::optional<double> x;
    std::optional<double> eta_per_layer;
};

NoiseSpec noise_from_args(const NoiseArgs &args) {
    NoiseSpec noise;
    const bool has_loss = args.eta.has_value() || args.eta_per_layer.has_value();
    if (has_loss && args.x) {
        noise.kind = NoiseKind::both;
    } else if (args.x) {
        noise.kind = NoiseKind::distinguishability;
    } else {
        noise.kind = NoiseKind::loss;
    }
    noise.eta = args.eta.value_or(1.0);
    noise.eta_per_layer = args.eta_per_layer;
    noise.x = args.x.value_or(1.0);
    if (noise.kind == NoiseKind::both) {
        throw UnsupportedError("loss and distinguishability together are not supported; pass either --eta or --x");
    }
    return noise;
}

struct SampleArgs {
    std::string circuit;
    std::string input;
    NoiseArgs noise;
    double epsilon = 0.01;
    size_t num_samples = 1000;
    bool force = false;
    std::optional<double> y_star;
    size_t threads = 1;
};

int run_sample(const Common &common, const SampleArgs &args) {
    const Circuit circuit = Circuit::from_json(read_file(args.circuit));
    const InputSpec input = InputSpec::from_json(read_file(args.input));
    const NoiseSpec noise = noise_from_args(args.noise);
    SamplerOptions options;
    options.force = args.force;
    options.y_star_override = args.y_star;
    const NoisySampler sampler(circuit, input, noise, args.epsilon, options);
    const auto records = sampler.sample_many(args.num_samples, common.seed, args.threads);

    uint64_t restarts = 0;
    uint64_t lost = 0;
    for (const auto &r : records) {
        restarts += r.restarts;
        lost += r.lost_photons;
    }
    const auto samples = static_cast<double>(records.size());
    const double draws = samples + static_cast<double>(restarts);
    const double restart_rate = draws > 0 ? static_cast<double>(restarts) / draws : 0;
    const double sigma = draws > 0 ? std::sqrt(args.epsilon * (1 - args.epsilon) / draws) : 0;

    const json meta = {
        {"version", kVersion},
        {"command", "sample"},
        {"seed", common.seed},
        {"stream_derivation", "derive_seed(seed, {sample_index})"},
        {"modes", circuit.num_modes()},
        {"depth", circuit.depth()},
        {"input", json::parse(input.to_json())},
        {"noise", json::parse(noise.to_json())},
        {"epsilon", args.epsilon},
        {"tvd_guarantee", "sum_m |p(m) - q(m)| <= 2 epsilon"},
        {"y_star", finite_or_null(sampler.y_star())},
        {"y_star_source", args.y_star ? "override" : (sampler.threshold().simulable ? "tail bound" : "unbounded (forced)")},
        {"percolation_parameter", sampler.percolation_parameter()},
        {"threshold_margin", sampler.threshold().margin},
        {"forced", args.force},
        {"num_samples", args.num_samples},
        {"graph", {{"A", sampler.graph().num_a()}, {"B", sampler.graph().num_b()}, {"delta", sampler.graph().delta()}}},
    };
    const json summary = {
        {"samples", records.size()},
        {"restarts", restarts},
        {"noise_draws", static_cast<uint64_t>(draws)},
        {"restart_rate", restart_rate},
        {"restart_rate_limit", args.epsilon + 3 * sigma},
        {"restart_rate_within_budget", restart_rate <= args.epsilon + 3 * sigma},
        {"overhead_per_sample", samples > 0 ? draws / samples : 0.0},
        {"overhead_bound", 1 / (1 - args.epsilon)},
        {"mean_lost_photons", samples > 0 ? static_cast<double>(lost) / samples : 0.0},
    };

    std::string body;
    if (common.format == "csv") {
        body = "# " + meta.dump() + "\n";
        body += "sample,outcome,lost,restarts,component_sizes\n";
        for (size_t k = 0; k < records.size(); ++k) {
            const auto &r = records[k];
            body += fmt::format(
                "{},{},{},{},{}\n", k, fmt::join(r.outcome, " "), r.lost_photons, r.restarts, fmt::join(r.component_sizes, " "));
        }
        body += "# summary " + summary.dump() + "\n";
    } else {
        body = json{{"meta", meta}}.dump() + "\n";
        for (const auto &r : records) body += r.to_json() + "\n";
        body += json{{"summary", summary}}.dump() + "\n";
    }
    emit(common, body);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ThresholdArgs {
    size_t delta = 0;
    NoiseArgs noise;
    std::optional<uint32_t> fock_n;
    std::optional<size_t> n;
    std::optional<size_t> depth;
    double epsilon = 0.01;
};

int run_threshold(const Common &common, const ThresholdArgs &args) {
    const NoiseSpec noise = noise_from_args(args.noise);
    const ThresholdReport report = classical_threshold(args.delta, noise, args.fock_n, args.depth);
    json doc = {
        {"version", kVersion},
        {"delta", args.delta},
        {"noise", json::parse(noise.to_json())},
        {"parameter", report.parameter},
        {"parameter_delta_squared", report.parameter * static_cast<double>(args.delta * args.delta)},
        {"margin", report.margin},
        {"simulable", report.simulable},
    };
    if (args.fock_n) doc["fock_n"] = *args.fock_n;
    if (args.n) {
        doc["n"] = *args.n;
        doc["epsilon"] = args.epsilon;
        try {
            const double ys = y_star(*args.n, args.epsilon, report.parameter, args.delta);
            doc["y_star"] = ys;
            doc["tail_bound_at_y_star"] = tail_bound(*args.n, ys, report.parameter, args.delta);
            const auto cap = std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(ys)));
            const auto dim = hilbert_dim_bound(cap, args.delta, args.fock_n.value_or(1));
            doc["hilbert_dim_bound"] = {
                {"y", cap},
                {"exact", dim.exact},
                {"saturated", dim.saturated},
                {"relaxation", finite_or_null(dim.relaxation)},
            };
        } catch (const DomainError &e) {
            doc["y_star"] = nullptr;
            doc["y_star_error"] = e.what();
        }
    }
    emit(common, render_report(common, doc));
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    size_t threads = 1;
    bool inject_fault = false;
    std::vector<int> only;
    size_t percolation_trials = 20;
    std::vector<size_t> percolation_ns{100, 1000, 10000, 100000};
    size_t tail_trials = 10000;
    size_t sampler_draws = 100000;
    size_t tvd_instances = 5;
    size_t mps_circuits = 50;
};

int run_verify(const Common &common, const VerifyArgs &args) {
    AcceptanceConfig config;
    config.seed = common.seed;
    config.threads = args.threads;
    config.inject_permanent_fault = args.inject_fault;
    config.only = args.only;
    config.percolation_trials = args.percolation_trials;
    config.percolation_ns = args.percolation_ns;
    config.tail_trials = args.tail_trials;
    config.sampler_draws = args.sampler_draws;
    config.tvd_instances = args.tvd_instances;
    config.mps_circuits = args.mps_circuits;
    if (config.percolation_ns.size() < 3) {
        throw ParameterError("--percolation-n needs at least three sizes for the scaling fit");
    }
    const auto results = run_acceptance(config);
    bool all = true;
    for (const auto &r : results) {
        std::cerr << format_check_line(r) << "\n";
        all = all && r.passed;
    }
    const json report = json::parse(acceptance_report_json(config, results));
    if (common.format == "csv") {
        std::string body = "id,name,passed,seconds\n";
        for (const auto &r : results) body += fmt::format("{},{},{},{:.3f}\n", r.id, r.name, r.passed, r.seconds);
        emit(common, body);
    } else {
        emit(common, report.dump() + "\n");
    }
    return all ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------

struct MpsArgs {
    std::string circuit;
    std::string input;
    size_t modes = 6;
    size_t depth = 3;
    size_t photons = 3;
    double threshold = 0;
    std::optional<size_t> cutoff;
    size_t max_bond = 4096;
    size_t num_samples = 0;
};

int run_mps_check(const Common &common, const MpsArgs &args) {
    Rng rng = make_stream(common.seed, {0});
    Circuit circuit = args.circuit.empty() ? random_circuit(args.modes, args.depth, rng)
                                           : Circuit::from_json(read_file(args.circuit));
    InputSpec input;
    if (!args.input.empty()) {
        input = InputSpec::from_json(read_file(args.input));
    } else {
        if (args.photons > circuit.num_modes()) {
            throw ParameterError("--photons exceeds the number of modes");
        }
        std::vector<size_t> modes;
        for (size_t k = 0; k < args.photons; ++k) modes.push_back(k);
        input = InputSpec::single_photons(modes);
    }
    const size_t cutoff = args.cutoff.value_or(input.total_photons() + 1);
    const auto occupations = input.dense(circuit.num_modes());
    MpsOptions options;
    options.max_bond = args.max_bond;
    MpsState mps = MpsState::from_fock(occupations, cutoff, options);
    mps.apply_circuit(circuit, args.threshold);

    json doc = json::parse(mps.profile_json());
    doc["version"] = kVersion;
    doc["seed"] = common.seed;
    doc["modes"] = circuit.num_modes();
    doc["depth"] = circuit.depth();
    doc["photons"] = input.total_photons();
    doc["cutoff"] = cutoff;
    doc["threshold"] = args.threshold;
    doc["norm"] = mps.norm();
    const uint64_t bound = input.all_single() ? single_photon_rank_bound(input.total_photons())
                                              : general_input_rank_bound(input.max_photon(), input.modes().size());
    doc["rank_bound"] = bound;
    doc["within_rank_bound"] = mps.max_bond_seen() <= bound;

    double dense_size = std::pow(static_cast<double>(cutoff), static_cast<double>(circuit.num_modes()));
    if (dense_size <= double(1 << 20) && input.total_photons() <= kOracleMaxPhotons + 3) {
        std::vector<GeneralInputState> inputs;
        for (uint32_t n : occupations) inputs.push_back(GeneralInputState::fock(n));
        doc["fidelity_vs_dense"] = fidelity(mps.to_dense(), dense_output_state(build_unitary(circuit), inputs, cutoff));
    }

    std::string body = (common.format == "csv") ? json_to_kv_csv(doc) : doc.dump() + "\n";
    if (args.num_samples > 0) {
        if (common.format == "csv") body += "sample,outcome\n";
        for (size_t k = 0; k < args.num_samples; ++k) {
            Rng stream = make_stream(common.seed, {1, k});
            const auto outcome = mps.sample(stream);
            body += common.format == "csv" ? fmt::format("{},{}\n", k, fmt::join(outcome, " "))
                                           : json{{"outcome", outcome}}.dump() + "\n";
        }
    }
    emit(common, body);
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"percolight: percolation-based simulation of noisy linear-optical circuits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    PercolateArgs perc;
    Common perc_common;
    auto *percolate = app.add_subcommand("percolate", "Maximum component size under random vertex removal");
    add_common(percolate, perc_common, "csv");
    percolate->add_option("--arch", perc.arch, "Graph generator")
        ->check(CLI::IsMember({"nonlocal", "1d"}))
        ->capture_default_str();
    percolate->add_option("--delta", perc.delta, "Input degree")->capture_default_str();
    percolate->add_option("--eta", perc.etas, "Transmission values")->required()->delimiter(',');
    percolate->add_option("--n", perc.ns, "Input counts N")->required()->delimiter(',');
    percolate->add_option("--trials", perc.trials, "Trials per (eta, N)")->capture_default_str();
    percolate->add_option("--sites-per-input", perc.sites_per_input, "1D output sites per input")->capture_default_str();
    percolate->add_option("--threads", perc.threads, "Worker threads (0 = all cores)")->capture_default_str();

    SampleArgs samp;
    Common samp_common;
    auto *sample = app.add_subcommand("sample", "Noisy boson sampling by percolation decomposition");
    add_common(sample, samp_common, "jsonl");
    sample->add_option("--circuit", samp.circuit, "Circuit JSON")->required();
    sample->add_option("--input", samp.input, "Input JSON")->required();
    sample->add_option("--eta", samp.noise.eta, "Transmission");
    sample->add_option("--x", samp.noise.x, "Indistinguishability overlap");
    sample->add_option("--eta-per-layer", samp.noise.eta_per_layer, "Per-layer transmission");
    sample->add_option("--epsilon", samp.epsilon, "Failure budget; sum |p - q| <= 2 epsilon")->capture_default_str();
    sample->add_option("--num-samples", samp.num_samples, "Number of samples")->capture_default_str();
    sample->add_flag("--force", samp.force, "Run outside the simulable region");
    sample->add_option("--y-star", samp.y_star, "Override the component-size cap");
    sample->add_option("--threads", samp.threads, "Worker threads (0 = all cores)")->capture_default_str();

    ThresholdArgs thr;
    Common thr_common;
    auto *threshold = app.add_subcommand("threshold", "Simulability verdict, y* and tail bound");
    add_common(threshold, thr_common, "jsonl");
    threshold->add_option("--delta", thr.delta, "Maximum degree")->required();
    threshold->add_option("--eta", thr.noise.eta, "Transmission");
    threshold->add_option("--x", thr.noise.x, "Indistinguishability overlap");
    threshold->add_option("--eta-per-layer", thr.noise.eta_per_layer, "Per-layer transmission (needs --depth)");
    threshold->add_option("--depth", thr.depth, "Circuit depth");
    threshold->add_option("--fock-n", thr.fock_n, "Photons per input mode");
    threshold->add_option("--n", thr.n, "Number of inputs N (enables y*)");
    threshold->add_option("--epsilon", thr.epsilon, "Failure budget")->capture_default_str();

    VerifyArgs ver;
    Common ver_common;
    auto *verify = app.add_subcommand("verify", "Run the acceptance suite");
    add_common(verify, ver_common, "jsonl");
    verify->add_option("--threads", ver.threads, "Worker threads")->capture_default_str();
    verify->add_flag("--inject-fault", ver.inject_fault, "Flip the sign of odd Ryser terms (test hook)");
    verify->add_option("--only", ver.only, "Check ids to run (1-9)")->delimiter(',');
    verify->add_option("--percolation-trials", ver.percolation_trials)->capture_default_str();
    verify->add_option("--percolation-n", ver.percolation_ns)->delimiter(',');
    verify->add_option("--tail-trials", ver.tail_trials)->capture_default_str();
    verify->add_option("--sampler-draws", ver.sampler_draws)->capture_default_str();
    verify->add_option("--tvd-instances", ver.tvd_instances)->capture_default_str();
    verify->add_option("--mps-circuits", ver.mps_circuits)->capture_default_str();

    MpsArgs mpsa;
    Common mpsa_common;
    auto *mps = app.add_subcommand("mps-check", "Evolve an MPS and report the bond-dimension profile");
    add_common(mps, mpsa_common, "jsonl");
    mps->add_option("--circuit", mpsa.circuit, "Circuit JSON (default: random)");
    mps->add_option("--input", mpsa.input, "Input JSON (default: photons in modes 0..k-1)");
    mps->add_option("--modes", mpsa.modes, "Modes of the random circuit")->capture_default_str();
    mps->add_option("--depth", mpsa.depth, "Depth of the random circuit")->capture_default_str();
    mps->add_option("--photons", mpsa.photons, "Single photons for the default input")->capture_default_str();
    mps->add_option("--threshold", mpsa.threshold, "Singular-value truncation threshold")->capture_default_str();
    mps->add_option("--cutoff", mpsa.cutoff, "Local Fock dimension (default: photons + 1)");
    mps->add_option("--max-bond", mpsa.max_bond, "Bond dimension cap")->capture_default_str();
    mps->add_option("--num-samples", mpsa.num_samples, "Samples to draw from the final state")->capture_default_str();

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = expand_config(args);
    } catch (const ParameterError &e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParameter;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParameter;
    }

    try {
        if (*percolate) return run_percolate(perc_common, perc);
        if (*sample) return run_sample(samp_common, samp);
        if (*threshold) return run_threshold(thr_common, thr);
        if (*verify) return run_verify(ver_common, ver);
        if (*mps) return run_mps_check(mpsa_common, mpsa);
    } catch (const ThresholdError &e) {
        std::cerr << "threshold refusal: " << e.what() << "\n";
        return kExitThreshold;
    } catch (const std::invalid_argument &e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const std::domain_error &e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const ResourceError &e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitParameter;
    } catch (const UnsupportedError &e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitParameter;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitParameter;
}
