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

#include "percolight/percolation_experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "percolight/errors.h"
#include "percolight/percolation.h"
#include "percolight/version.h"

namespace percolight {

namespace {

size_t resolve_threads(size_t requested, size_t jobs) {
    size_t t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return std::max<size_t>(1, std::min(t, jobs));
}

}  // namespace

std::vector<PercolationRecord> percolation_experiment(const PercolationConfig &config) {
    if (config.trials < 1) {
        throw ParameterError("trials must be >= 1");
    }
    if (config.etas.empty() || config.ns.empty()) {
        throw ParameterError("need at least one eta and one N");
    }
    for (double eta : config.etas) {
        if (!(eta >= 0 && eta <= 1)) {
            throw ParameterError("eta values must lie in [0, 1]");
        }
    }
    for (size_t n : config.ns) {
        if (n < 1) {
            throw ParameterError("N values must be >= 1");
        }
        const size_t m = config.arch == Architecture::nonlocal ? 8 * n : config.sites_per_input * n;
        if (config.delta < 1 || config.delta > m) {
            throw ParameterError(
                "delta " + std::to_string(config.delta) + " must lie in [1, M] with M = " + std::to_string(m) +
                " for N = " + std::to_string(n));
        }
    }

    const size_t per_eta = config.ns.size() * config.trials;
    const size_t jobs = config.etas.size() * per_eta;
    std::vector<PercolationRecord> records(jobs);

    auto run_job = [&](size_t job) {
        const size_t eta_idx = job / per_eta;
        const size_t n_idx = (job % per_eta) / config.trials;
        const size_t trial = job % config.trials;
        const double eta = config.etas[eta_idx];
        const size_t n = config.ns[n_idx];
        const uint64_t stream_seed = derive_seed(config.seed, {eta_idx, n_idx, trial});
        Rng rng(stream_seed);
        BipartiteGraph g = config.arch == Architecture::nonlocal
                               ? gen_nonlocal(n, config.delta, rng)
                               : gen_1d(n, config.delta, rng, config.sites_per_input);
        VertexRemoval removal = remove_vertices(g, eta, rng);
        ComponentStats stats = component_stats(g, removal.kept);
        records[job] = PercolationRecord{
            config.arch, n, g.num_b(), config.delta, eta, trial, stream_seed, stats.max_size, stats.num_components};
    };

    const size_t threads = resolve_threads(config.threads, jobs);
    if (threads == 1) {
        for (size_t job = 0; job < jobs; ++job) run_job(job);
        return records;
    }
    std::atomic<size_t> next{0};
    std::vector<std::jthread> pool;
    for (size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (size_t job = next++; job < jobs; job = next++) {
                run_job(job);
            }
        });
    }
    pool.clear();
    return records;
}

std::vector<PercolationSummary> summarize(const std::vector<PercolationRecord> &records) {
    std::map<std::pair<double, size_t>, std::vector<size_t>> cells;
    std::vector<std::pair<double, size_t>> order;
    for (const auto &r : records) {
        auto key = std::make_pair(r.eta, r.n);
        auto [it, inserted] = cells.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(r.max_component);
    }
    std::vector<PercolationSummary> out;
    for (const auto &key : order) {
        auto values = cells[key];
        std::sort(values.begin(), values.end());
        double sum = 0;
        for (size_t v : values) sum += static_cast<double>(v);
        const size_t k = values.size();
        double median = (k % 2) ? static_cast<double>(values[k / 2])
                                : 0.5 * static_cast<double>(values[k / 2 - 1] + values[k / 2]);
        out.push_back({key.first, key.second, k, sum / static_cast<double>(k), median, values.back()});
    }
    return out;
}

std::string to_csv(const std::vector<PercolationRecord> &records) {
    std::string out = "arch,N,M,delta,eta,trial,seed,max_component,num_components,marker\n";
    for (const auto &r : records) {
        out += fmt::format(
            "{},{},{},{},{},{},{},{},{},{}\n", to_string(r.arch), r.n, r.m, r.delta, r.eta, r.trial, r.seed,
            r.max_component, r.num_components, kLargestPermanentMarker);
    }
    return out;
}

std::string to_jsonl(const std::vector<PercolationRecord> &records) {
    std::string out;
    for (const auto &r : records) {
        nlohmann::json line = {
            {"arch", to_string(r.arch)},
            {"N", r.n},
            {"M", r.m},
            {"delta", r.delta},
            {"eta", r.eta},
            {"trial", r.trial},
            {"seed", r.seed},
            {"max_component", r.max_component},
            {"num_components", r.num_components},
            {"marker", kLargestPermanentMarker},
        };
        out += line.dump();
        out += '\n';
    }
    return out;
}

std::string experiment_metadata_json(const PercolationConfig &config) {
    nlohmann::json doc = {
        {"generator", to_string(config.arch)},
        {"delta", config.delta},
        {"etas", config.etas},
        {"ns", config.ns},
        {"trials", config.trials},
        {"seed", config.seed},
        {"sites_per_input", config.sites_per_input},
        {"aggregation", {{"reported", {"mean", "median", "max"}}, {"comparison", "mean"}}},
        {"marker", kLargestPermanentMarker},
        {"stream_derivation", "derive_seed(seed, {eta_index, n_index, trial})"},
        {"version", kVersion},
    };
    return doc.dump();
}

namespace {

// Ordinary least squares y = slope*x + intercept; returns residual sum of squares.
double fit_line(const std::vector<double> &x, const std::vector<double> &y, double &slope, double &intercept) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    slope = sxx > 0 ? sxy / sxx : 0;
    intercept = my - slope * mx;
    double rss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (slope * x[i] + intercept);
        rss += r * r;
    }
    return rss;
}

}  // namespace

ScalingFit compare_scaling_fits(const std::vector<double> &ns, const std::vector<double> &values) {
    if (ns.size() != values.size() || ns.size() < 3) {
        throw ParameterError("scaling fit needs at least three (N, value) pairs");
    }
    std::vector<double> logs;
    for (double n : ns) logs.push_back(std::log(n));
    ScalingFit fit{};
    fit.log_rss = fit_line(logs, values, fit.log_slope, fit.log_intercept);
    fit.linear_rss = fit_line(ns, values, fit.linear_slope, fit.linear_intercept);
    fit.ratio = fit.log_rss > 0 ? fit.linear_rss / fit.log_rss : std::numeric_limits<double>::infinity();
    return fit;
}

}  // namespace percolight
