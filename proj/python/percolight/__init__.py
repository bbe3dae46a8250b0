# Copyright 2026 The percolight Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Percolation-based simulation of noisy linear-optical circuits."""

from percolight._core import (
    DiagnosticError,
    ResourceError,
    ThresholdError,
    UnsupportedError,
    __version__,
    build_unitary,
    classical_threshold,
    mps_evolve,
    oracle_distribution,
    percolate,
    permanent,
    sample,
    tail_bound,
    tail_rate,
    verify,
    y_star,
)

__all__ = [
    "DiagnosticError",
    "ResourceError",
    "ThresholdError",
    "UnsupportedError",
    "__version__",
    "build_unitary",
    "classical_threshold",
    "mps_evolve",
    "oracle_distribution",
    "percolate",
    "permanent",
    "sample",
    "tail_bound",
    "tail_rate",
    "verify",
    "y_star",
]
