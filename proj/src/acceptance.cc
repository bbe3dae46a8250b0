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

#include "percolight/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>

#include <fmt/format.h>
#include <json.hpp>

#include "percolight/boson_sampling.h"
#include "percolight/circuit.h"
#include "percolight/errors.h"
#include "percolight/mps.h"
#include "percolight/noise.h"
#include "percolight/noisy_sampler.h"
#include "percolight/percolation.h"
#include "percolight/percolation_experiment.h"
#include "percolight/permanent.h"
#include "percolight/rng.h"

namespace percolight {

namespace {

using nlohmann::json;

CheckResult make_result(int id, std::string name) {
    CheckResult r;
    r.id = id;
    r.name = std::move(name);
    return r;
}


std::string join(const std::vector<std::string> &parts, const char *sep = "; ") {
    std::string out;
    for (size_t k = 0; k < parts.size(); ++k) {
        if (k) out += sep;
        out += parts[k];
    }
    return out;
}

InputSpec random_single_photons(size_t num_modes, size_t photons, Rng &rng) {
    std::vector<size_t> modes(num_modes);
    for (size_t k = 0; k < num_modes; ++k) modes[k] = k;
    for (size_t k = 0; k < photons; ++k) {
        size_t pick = k + static_cast<size_t>(uniform_below(rng, num_modes - k));
        std::swap(modes[k], modes[pick]);
    }
    modes.resize(photons);
    std::sort(modes.begin(), modes.end());
    return InputSpec::single_photons(modes);
}

double mean_at(const std::vector<PercolationSummary> &summary, double eta, size_t n) {
    for (const auto &s : summary) {
        if (s.eta == eta && s.n == n) return s.mean_max;
    }
    throw DiagnosticError(fmt::format("missing summary cell eta={} N={}", eta, n));
}

// Sub- vs supercritical comparison for one architecture.
void percolation_bracket(
    const AcceptanceConfig &config,
    Architecture arch,
    double eta_low,
    double eta_high,
    bool check_marker,
    CheckResult &result,
    std::vector<std::string> &failures) {
    PercolationConfig pc;
    pc.arch = arch;
    pc.delta = 9;
    pc.etas = {eta_low, eta_high};
    pc.ns = config.percolation_ns;
    pc.trials = config.percolation_trials;
    pc.seed = derive_seed(config.seed, {1, static_cast<uint64_t>(arch)});
    pc.threads = config.threads;
    const auto summary = summarize(percolation_experiment(pc));

    std::vector<double> ns;
    std::vector<double> low;
    for (size_t n : pc.ns) {
        ns.push_back(static_cast<double>(n));
        low.push_back(mean_at(summary, eta_low, n));
    }
    const size_t n_big = pc.ns.back();
    const double low_big = low.back();
    const double high_big = mean_at(summary, eta_high, n_big);
    const ScalingFit fit = compare_scaling_fits(ns, low);
    const std::string tag = to_string(arch);

    result.metrics.emplace_back(tag + "_fit_ratio", fit.ratio);
    result.metrics.emplace_back(tag + "_low_mean_max", low_big);
    result.metrics.emplace_back(tag + "_high_mean_max", high_big);

    if (!(fit.ratio >= 10)) {
        failures.push_back(fmt::format("{} eta={}: log/linear residual ratio {:.3g} < 10", tag, eta_low, fit.ratio));
    }
    if (check_marker && !(low_big < static_cast<double>(kLargestPermanentMarker))) {
        failures.push_back(fmt::format("{} eta={}: mean max {:.2f} >= {}", tag, eta_low, low_big, kLargestPermanentMarker));
    }
    if (!(high_big > 0.01 * static_cast<double>(n_big))) {
        failures.push_back(fmt::format(
            "{} eta={}: mean max {:.1f} <= 0.01 N = {:.0f}", tag, eta_high, high_big, 0.01 * static_cast<double>(n_big)));
    }
    result.detail += fmt::format(
        "{}: eta={} ratio={:.1f} mean_max(N={})={:.2f}; eta={} mean_max={:.1f}. ",
        tag,
        eta_low,
        fit.ratio,
        n_big,
        low_big,
        eta_high,
        high_big);
}

std::string sample_lines(const std::vector<SampleRecord> &records) {
    std::string out;
    for (const auto &r : records) {
        out += r.to_json();
        out += '\n';
    }
    return out;
}

}  // namespace

AcceptanceConfig AcceptanceConfig::from_json(const std::string &text) {
    AcceptanceConfig c;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception &e) {
        throw ParameterError(std::string("verify config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParameterError("verify config must be a JSON object");
    }
    try {
        if (doc.contains("seed")) c.seed = doc["seed"].get<uint64_t>();
        if (doc.contains("threads")) c.threads = doc["threads"].get<size_t>();
        if (doc.contains("percolation_trials")) c.percolation_trials = doc["percolation_trials"].get<size_t>();
        if (doc.contains("percolation_ns")) c.percolation_ns = doc["percolation_ns"].get<std::vector<size_t>>();
        if (doc.contains("tail_trials")) c.tail_trials = doc["tail_trials"].get<size_t>();
        if (doc.contains("sampler_draws")) c.sampler_draws = doc["sampler_draws"].get<size_t>();
        if (doc.contains("tvd_instances")) c.tvd_instances = doc["tvd_instances"].get<size_t>();
        if (doc.contains("mps_circuits")) c.mps_circuits = doc["mps_circuits"].get<size_t>();
        if (doc.contains("inject_permanent_fault")) c.inject_permanent_fault = doc["inject_permanent_fault"].get<bool>();
        if (doc.contains("only")) c.only = doc["only"].get<std::vector<int>>();
    } catch (const json::exception &e) {
        throw ParameterError(std::string("verify config has a mistyped field: ") + e.what());
    }
    if (c.percolation_ns.size() < 3) {
        throw ParameterError("percolation_ns needs at least three sizes for the scaling fit");
    }
    if (c.percolation_trials == 0 || c.tail_trials == 0 || c.sampler_draws == 0 || c.tvd_instances == 0 ||
        c.mps_circuits == 0) {
        throw ParameterError("verify sizes must be positive");
    }
    for (int id : c.only) {
        if (id < 1 || id > 9) throw ParameterError(fmt::format("unknown check id {}", id));
    }
    return c;
}

CheckResult check_percolation_transition(const AcceptanceConfig &config) {
    auto result = make_result(1, "percolation_transition");
    std::vector<std::string> failures;
    percolation_bracket(config, Architecture::nonlocal, 0.02, 0.14, true, result, failures);
    percolation_bracket(config, Architecture::one_d, 0.4, 0.7, false, result, failures);
    result.passed = failures.empty();
    if (!failures.empty()) result.detail += "FAILED: " + join(failures);
    return result;
}

CheckResult check_tail_bound(const AcceptanceConfig &config) {
    auto result = make_result(2, "tail_bound");
    constexpr size_t n = 1000;
    constexpr size_t delta = 9;
    constexpr double eta = 0.005;
    PercolationConfig pc;
    pc.arch = Architecture::nonlocal;
    pc.delta = delta;
    pc.etas = {eta};
    pc.ns = {n};
    pc.trials = config.tail_trials;
    pc.seed = derive_seed(config.seed, {2});
    pc.threads = config.threads;
    const auto records = percolation_experiment(pc);

    std::vector<std::string> failures;
    double worst_ratio = 0;
    size_t worst_y = 0;
    const auto trials = static_cast<double>(records.size());
    for (size_t y = 1; y <= 24; ++y) {
        const auto exceed = static_cast<double>(
            std::count_if(records.begin(), records.end(), [&](const auto &r) { return r.max_component > y; }));
        const double p = exceed / trials;
        const double se = std::sqrt(p * (1 - p) / trials);
        const double bound = tail_bound_raw(n, static_cast<double>(y), eta, delta);
        const double allowed = bound + 3 * se;
        if (p > 0 && p / allowed > worst_ratio) {
            worst_ratio = p / allowed;
            worst_y = y;
        }
        if (p > allowed) {
            failures.push_back(fmt::format("y={}: empirical {:.4g} > bound {:.4g} + 3se", y, p, bound));
        }
    }
    const double ys = y_star(n, 0.01, eta, delta);
    if (!(std::abs(ys - 7.681) <= 0.001)) {
        failures.push_back(fmt::format("y*={:.6f} differs from 7.681", ys));
    }
    result.metrics.emplace_back("y_star", ys);
    result.metrics.emplace_back("max_empirical_over_allowed", worst_ratio);
    result.detail = fmt::format(
        "y*={:.4f}; max over y in [1,24] of empirical / (bound + 3se) = {:.3g} at y={}. ", ys, worst_ratio, worst_y);
    result.passed = failures.empty();
    if (!failures.empty()) result.detail += "FAILED: " + join(failures);
    return result;
}

CheckResult check_hom_dip(const AcceptanceConfig &) {
    auto result = make_result(3, "hom_dip");
    const ComplexMatrix u = bs_unitary(std::numbers::pi / 4, 0);
    const std::vector<uint32_t> in{1, 1};
    const double p11 = outcome_probability(u, in, std::vector<uint32_t>{1, 1});
    const double p20 = outcome_probability(u, in, std::vector<uint32_t>{2, 0});
    const double p02 = outcome_probability(u, in, std::vector<uint32_t>{0, 2});
    result.metrics = {{"p11", p11}, {"p20", p20}, {"p02", p02}};
    result.passed = p11 <= 1e-12 && std::abs(p20 - 0.5) <= 1e-12 && std::abs(p02 - 0.5) <= 1e-12;
    result.detail = fmt::format("P(1,1)={:.3g} P(2,0)={:.15f} P(0,2)={:.15f}", p11, p20, p02);
    return result;
}

CheckResult check_permanent_oracle(const AcceptanceConfig &config) {
    auto result = make_result(4, "permanent_oracle");
    Rng rng = make_stream(config.seed, {4});
    double max_diff = 0;
    for (size_t k = 0; k < 200; ++k) {
        const auto size = static_cast<Eigen::Index>(2 + k % 6);
        ComplexMatrix a(size, size);
        for (Eigen::Index i = 0; i < size; ++i) {
            for (Eigen::Index j = 0; j < size; ++j) {
                a(i, j) = Complex(2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1);
            }
        }
        max_diff = std::max(max_diff, std::abs(permanent(a) - permanent_by_permutations(a)));
    }
    bool integer_ok = true;
    std::string integer_detail;
    int64_t factorial = 1;
    for (int k = 1; k <= 7; ++k) {
        factorial *= k;
        const Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> ones =
            Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic>::Ones(k, k);
        const int64_t per = ryser_permanent(ones);
        if (per != factorial) {
            integer_ok = false;
            integer_detail += fmt::format(" Per(J_{})={} != {}", k, per, factorial);
        }
    }
    result.metrics = {{"max_abs_diff", max_diff}};
    result.passed = max_diff <= 1e-9 && integer_ok;
    result.detail = fmt::format(
        "max |Ryser - permutation sum| over 200 matrices = {:.3g}; all-ones k<=7 {}{}",
        max_diff,
        integer_ok ? "exact" : "MISMATCH",
        integer_detail);
    return result;
}

CheckResult check_sampler_soundness(const AcceptanceConfig &config) {
    auto result = make_result(5, "sampler_soundness");
    Rng rng = make_stream(config.seed, {5});
    const Circuit circuit = random_circuit(6, 2, rng);
    const InputSpec input = random_single_photons(6, 3, rng);

    std::vector<std::string> failures;
    auto run = [&](const std::string &label, const NoiseSpec &noise, uint64_t stream) {
        SamplerOptions options;
        options.force = true;
        options.y_star_override = static_cast<double>(input.total_photons() + 1);
        const NoisySampler sampler(circuit, input, noise, 0.01, options);
        const auto records = sampler.sample_many(config.sampler_draws, derive_seed(config.seed, {5, stream}), config.threads);
        std::vector<OutcomePattern> outcomes;
        outcomes.reserve(records.size());
        for (const auto &r : records) outcomes.push_back(r.outcome);
        const double d = tvd(empirical_distribution(outcomes), brute_force_oracle(circuit, input, noise));
        result.metrics.emplace_back(label + "_tvd", d);
        result.detail += fmt::format("{}: TVD={:.4f}. ", label, d);
        if (!(d <= 0.015)) failures.push_back(fmt::format("{} TVD {:.4f} > 0.015", label, d));
    };
    NoiseSpec loss;
    loss.kind = NoiseKind::loss;
    loss.eta = 0.5;
    run("loss_eta_0.5", loss, 1);
    NoiseSpec dist;
    dist.kind = NoiseKind::distinguishability;
    dist.x = 0.5;
    run("distinguishability_x_0.5", dist, 2);
    result.passed = failures.empty();
    if (!failures.empty()) result.detail += "FAILED: " + join(failures);
    return result;
}

CheckResult check_tvd_budget(const AcceptanceConfig &config) {
    auto result = make_result(6, "tvd_budget");
    Rng rng = make_stream(config.seed, {6});
    NoiseSpec noise;
    noise.kind = NoiseKind::loss;
    noise.eta = 0.5;
    std::vector<std::string> failures;
    double worst_ratio = 0;
    double max_p_fail = 0;
    for (size_t k = 0; k < config.tvd_instances; ++k) {
        const Circuit circuit = random_circuit(8, 3, rng);
        const InputSpec input = random_single_photons(8, 4, rng);
        const auto oracle = conditioned_oracle(circuit, input, noise, 2.0);
        const double p_fail = 1 - oracle.p_event;
        const double d = tvd(oracle.full, oracle.given_event);
        max_p_fail = std::max(max_p_fail, p_fail);
        if (p_fail > 0) worst_ratio = std::max(worst_ratio, d / p_fail);
        if (!(d <= 2 * p_fail + 1e-12)) {
            failures.push_back(fmt::format("instance {}: TVD {:.6f} > 2 p(E^c) = {:.6f}", k, d, 2 * p_fail));
        }
    }
    if (max_p_fail <= 0) {
        failures.push_back("no instance produced a component above y* = 2; the check is vacuous");
    }
    result.metrics = {{"max_tvd_over_p_fail", worst_ratio}, {"max_p_fail", max_p_fail}};
    result.detail = fmt::format(
        "{} instances, max TVD/p(E^c) = {:.4f} (limit 2), max p(E^c) = {:.4f}. ",
        config.tvd_instances,
        worst_ratio,
        max_p_fail);
    result.passed = failures.empty();
    if (!failures.empty()) result.detail += "FAILED: " + join(failures);
    return result;
}

CheckResult check_mps(const AcceptanceConfig &config) {
    auto result = make_result(7, "mps_rank_bound");
    Rng rng = make_stream(config.seed, {7});
    constexpr size_t modes = 6;
    constexpr size_t photons = 3;
    constexpr size_t local_dim = photons + 1;
    const uint64_t bound = single_photon_rank_bound(photons);
    std::vector<std::string> failures;
    double worst_infidelity = 0;
    double worst_norm_drift = 0;
    size_t worst_bond = 0;
    size_t worst_rank = 0;
    for (size_t c = 0; c < config.mps_circuits; ++c) {
        const Circuit circuit = random_circuit(modes, 3, rng);
        const InputSpec input = random_single_photons(modes, photons, rng);
        const auto occupations = input.dense(modes);
        MpsState mps = MpsState::from_fock(occupations, local_dim);
        mps.apply_circuit(circuit, 0);
        std::vector<GeneralInputState> inputs;
        for (uint32_t n : occupations) inputs.push_back(GeneralInputState::fock(n));
        const auto dense = dense_output_state(build_unitary(circuit), inputs, local_dim);
        const double infidelity = 1 - fidelity(mps.to_dense(), dense);
        const double norm_drift = std::abs(mps.norm() - 1);
        if (!(infidelity <= 1e-8)) {
            failures.push_back(fmt::format("circuit {}: infidelity {:.3g} > 1e-8", c, infidelity));
        }
        if (!(norm_drift <= 1e-8)) {
            failures.push_back(fmt::format("circuit {}: norm drift {:.3g} > 1e-8", c, norm_drift));
        }
        worst_infidelity = std::max(worst_infidelity, std::abs(infidelity));
        worst_norm_drift = std::max(worst_norm_drift, norm_drift);
        worst_bond = std::max(worst_bond, mps.max_bond_seen());
        for (size_t cut = 1; cut < modes; ++cut) {
            const auto check = schmidt_rank_check(dense, modes, local_dim, cut, bound);
            worst_rank = std::max(worst_rank, check.rank);
            if (!check.within_bound) {
                failures.push_back(fmt::format("circuit {} cut {}: Schmidt rank {} > {}", c, cut, check.rank, bound));
            }
        }
    }
    if (worst_bond > bound) failures.push_back(fmt::format("MPS bond {} > {}", worst_bond, bound));
    result.metrics = {
        {"max_infidelity", worst_infidelity},
        {"max_norm_drift", worst_norm_drift},
        {"max_bond", static_cast<double>(worst_bond)},
        {"max_schmidt_rank", static_cast<double>(worst_rank)},
    };
    result.detail = fmt::format(
        "{} circuits: max infidelity {:.3g}, max bond {}, max Schmidt rank {} (bound {}). ",
        config.mps_circuits,
        worst_infidelity,
        worst_bond,
        worst_rank,
        bound);
    result.passed = failures.empty();
    if (!failures.empty()) result.detail += "FAILED: " + join(failures);
    return result;
}

CheckResult check_fock_threshold(const AcceptanceConfig &) {
    auto result = make_result(8, "fock_threshold");
    std::vector<std::string> failures;
    size_t cells = 0;
    size_t simulable_cells = 0;
    for (uint32_t n = 1; n <= 3; ++n) {
        for (size_t delta = 2; delta <= 4; ++delta) {
            for (int step = 1; step <= 50; ++step) {
                const double eta = step / 100.0;
                NoiseSpec noise;
                noise.kind = NoiseKind::loss;
                noise.eta = eta;
                const auto report = classical_threshold(delta, noise, n);
                double lost_all = 1;
                for (uint32_t k = 0; k < n; ++k) lost_all *= 1 - eta;
                const double direct = 1 - (1 - lost_all) * static_cast<double>(delta * delta);
                ++cells;
                if (report.simulable) ++simulable_cells;
                if ((direct > 0) != report.simulable || std::abs(direct - report.margin) > 1e-12) {
                    failures.push_back(fmt::format(
                        "n={} eta={} delta={}: margin {} vs direct {}", n, eta, delta, report.margin, direct));
                }
                if (n == 1) {
                    const auto single = classical_threshold(delta, noise);
                    const bool expected = eta * static_cast<double>(delta * delta) < 1;
                    if (single.simulable != expected || report.simulable != expected) {
                        failures.push_back(fmt::format("n=1 eta={} delta={}: disagrees with eta*delta^2 < 1", eta, delta));
                    }
                }
            }
        }
    }
    result.metrics = {{"cells", static_cast<double>(cells)}, {"simulable_cells", static_cast<double>(simulable_cells)}};
    result.detail = fmt::format("{} grid cells, {} simulable, {} mismatches. ", cells, simulable_cells, failures.size());
    result.passed = failures.empty();
    if (!failures.empty()) result.detail += "FAILED: " + join(failures);
    return result;
}

CheckResult check_determinism(const AcceptanceConfig &config) {
    auto result = make_result(9, "determinism");
    std::vector<std::string> failures;
    const size_t many = std::max<size_t>(config.threads, 4);

    for (Architecture arch : {Architecture::nonlocal, Architecture::one_d}) {
        PercolationConfig pc;
        pc.arch = arch;
        pc.etas = {0.05, 0.5};
        pc.ns = {500, 2000};
        pc.trials = 6;
        pc.seed = config.seed;
        pc.threads = 1;
        const std::string first = to_csv(percolation_experiment(pc));
        const std::string again = to_csv(percolation_experiment(pc));
        pc.threads = many;
        const std::string threaded = to_csv(percolation_experiment(pc));
        if (first != again) failures.push_back(to_string(arch) + " percolation differs between identical runs");
        if (first != threaded) failures.push_back(to_string(arch) + " percolation differs across thread counts");
    }

    Rng rng = make_stream(config.seed, {9});
    const Circuit circuit = random_circuit(8, 3, rng);
    const InputSpec input = random_single_photons(8, 4, rng);
    NoiseSpec noise;
    noise.eta = 0.3;
    SamplerOptions options;
    options.force = true;
    options.y_star_override = 3;
    const NoisySampler sampler(circuit, input, noise, 0.01, options);
    const std::string first = sample_lines(sampler.sample_many(500, config.seed, 1));
    const std::string again = sample_lines(sampler.sample_many(500, config.seed, 1));
    const std::string threaded = sample_lines(sampler.sample_many(500, config.seed, many));
    if (first != again) failures.push_back("sample stream differs between identical runs");
    if (first != threaded) failures.push_back("sample stream differs across thread counts");

    MpsState mps = MpsState::from_fock(input.dense(8), 5);
    mps.apply_circuit(circuit, 0);
    std::string mps_first;
    std::string mps_again;
    for (std::string *target : {&mps_first, &mps_again}) {
        Rng stream = make_stream(config.seed, {9, 1});
        for (int k = 0; k < 200; ++k) {
            for (uint32_t v : mps.sample(stream)) *target += std::to_string(v) + ",";
            *target += '\n';
        }
    }
    if (mps_first != mps_again) failures.push_back("MPS samples differ between identical runs");

    result.detail = fmt::format("percolation CSV, sampler JSONL and MPS samples compared at 1 and {} threads. ", many);
    result.passed = failures.empty();
    if (!failures.empty()) result.detail += "FAILED: " + join(failures);
    return result;
}

std::vector<CheckResult> run_acceptance(const AcceptanceConfig &config) {
    using Check = CheckResult (*)(const AcceptanceConfig &);
    static constexpr Check checks[] = {
        check_percolation_transition,
        check_tail_bound,
        check_hom_dip,
        check_permanent_oracle,
        check_sampler_soundness,
        check_tvd_budget,
        check_mps,
        check_fock_threshold,
        check_determinism,
    };
    std::unique_ptr<ScopedPermanentFault> fault;
    if (config.inject_permanent_fault) fault = std::make_unique<ScopedPermanentFault>();

    std::vector<CheckResult> results;
    for (int id = 1; id <= 9; ++id) {
        if (!config.only.empty() && std::find(config.only.begin(), config.only.end(), id) == config.only.end()) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = checks[id - 1](config);
        } catch (const std::exception &e) {
            r = make_result(id, "check_" + std::to_string(id));
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_check_line(const CheckResult &result) {
    return fmt::format(
        "[{}] {} {}: {} ({:.1f}s)", result.passed ? "PASS" : "FAIL", result.id, result.name, result.detail, result.seconds);
}

std::string acceptance_report_json(const AcceptanceConfig &config, const std::vector<CheckResult> &results) {
    json checks = json::array();
    bool all = true;
    for (const auto &r : results) {
        json metrics = json::object();
        for (const auto &[key, value] : r.metrics) metrics[key] = value;
        checks.push_back({
            {"id", r.id},
            {"name", r.name},
            {"passed", r.passed},
            {"detail", r.detail},
            {"metrics", metrics},
            {"seconds", r.seconds},
        });
        all = all && r.passed;
    }
    json doc = {
        {"passed", all},
        {"seed", config.seed},
        {"fault_injected", config.inject_permanent_fault},
        {"checks", checks},
    };
    return doc.dump(2);
}

}  // namespace percolight
