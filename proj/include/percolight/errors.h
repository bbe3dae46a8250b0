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

#ifndef PERCOLIGHT_ERRORS_H
#define PERCOLIGHT_ERRORS_H

#include <stdexcept>
#include <string>

namespace percolight {

/// Bad user-supplied parameter (out-of-range probability, Δ larger than the
/// output set, zero trials, ...).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed object: mode reused inside one layer, non-square matrix, edge
/// endpoint outside the vertex set.
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Mathematical domain violation, e.g. asking for y* in the supercritical
/// regime or mismatched photon numbers.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A configured size cap (outcome enumeration, bond dimension, oracle size)
/// was exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The requested noise configuration is outside the classically simulable
/// region and the caller did not force the run.
struct ThresholdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The noise model combination has no supported simulation route.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Internal consistency diagnostic, e.g. runaway restart counts.
struct DiagnosticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace percolight

#endif
