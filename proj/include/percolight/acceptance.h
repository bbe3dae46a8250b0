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

#ifndef PERCOLIGHT_ACCEPTANCE_H
#define PERCOLIGHT_ACCEPTANCE_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace percolight {

/// Sizes of the end-to-end verification suite. Defaults are the full
/// acceptance protocol; smaller values give a quicker smoke run.
struct AcceptanceConfig {
    uint64_t seed = 20260101;
    size_t threads = 1;
    size_t percolation_trials = 20;
    std::vector<size_t> percolation_ns{100, 1000, 10000, 100000};
    size_t tail_trials = 10000;
    size_t sampler_draws = 100000;
    size_t tvd_instances = 5;
    size_t mps_circuits = 50;
    /// Runs every check with the permanent sign-flip fault enabled.
    bool inject_permanent_fault = false;
    /// Subset of criteria to run (1-9); empty runs all.
    std::vector<int> only;

    /// Keys match the field names; absent keys keep their defaults.
    static AcceptanceConfig from_json(const std::string &text);
};

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    std::vector<std::pair<std::string, double>> metrics;
    double seconds = 0;
};

std::vector<CheckResult> run_acceptance(const AcceptanceConfig &config);

/// One line per check: "[PASS] 3 hom_dip: ...".
std::string format_check_line(const CheckResult &result);

/// {"passed": bool, "seed": .., "checks": [{"id", "name", "passed", "detail", "metrics", "seconds"}]}
std::string acceptance_report_json(const AcceptanceConfig &config, const std::vector<CheckResult> &results);

/// Individual checks, exposed for targeted tests.
CheckResult check_percolation_transition(const AcceptanceConfig &config);
CheckResult check_tail_bound(const AcceptanceConfig &config);
CheckResult check_hom_dip(const AcceptanceConfig &config);
CheckResult check_permanent_oracle(const AcceptanceConfig &config);
CheckResult check_sampler_soundness(const AcceptanceConfig &config);
CheckResult check_tvd_budget(const AcceptanceConfig &config);
CheckResult check_mps(const AcceptanceConfig &config);
CheckResult check_fock_threshold(const AcceptanceConfig &config);
CheckResult check_determinism(const AcceptanceConfig &config);

}  // namespace percolight

#endif
